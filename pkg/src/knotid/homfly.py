"""HOMFLY-PT polynomials in the Lickorish-Millett normalization.

Polynomials live in Z[L, L^-1, M, M^-1] and are defined by

* H(unknot) = 1,
* the skein relation  L*H(D+) + L^-1*H(D-) + M*H(D0) = 0,
* H(A split-union B) = delta * H(A) * H(B)  with  delta = -(L + L^-1)/M.

The engine resolves a diagram toward descending diagrams: walking the
components in order from their first tokens, the first crossing met on
its under-strand is switched and smoothed, each branch weighted by the
skein relation.  A diagram with every crossing first met over is an
unlink of k components and contributes delta^(k-1).  Branch diagrams are
reduced with the Reidemeister simplifier and split pieces are factored
out; values are memoized on canonical EGC strings.
"""

from __future__ import annotations

import re
from typing import Iterable

from .egc import Diagram, Token, format_egc, parse_egc
from .errors import PolynomialError, SkeinLimitError
from .simplify import simplify as _reduce

DEFAULT_MAX_CROSSINGS = 50
DEFAULT_MAX_NODES = 10_000_000


class LMPolynomial:
    """Sparse integer Laurent polynomial in L and M.

    Terms map (l_exp, m_exp) to a nonzero integer coefficient; integer
    arithmetic is exact at any size.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        clean = {k: v for k, v in (terms or {}).items() if v != 0}
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("LMPolynomial is immutable")

    @classmethod
    def constant(cls, value: int) -> "LMPolynomial":
        return cls({(0, 0): value})

    @classmethod
    def monomial(cls, coeff: int, l_exp: int, m_exp: int) -> "LMPolynomial":
        return cls({(l_exp, m_exp): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, LMPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LMPolynomial") -> "LMPolynomial":
        return poly_add(self, other)

    def __mul__(self, other: "LMPolynomial") -> "LMPolynomial":
        return poly_mul(self, other)

    def __neg__(self) -> "LMPolynomial":
        return LMPolynomial({k: -v for k, v in self.terms.items()})

    def __repr__(self) -> str:
        return f"LMPolynomial({format_poly(self)!r})"


ZERO = LMPolynomial()
ONE = LMPolynomial.constant(1)
# Value of one extra split unknot: -(L + L^-1) * M^-1.
DELTA = LMPolynomial({(1, -1): -1, (-1, -1): -1})


def poly_add(p: LMPolynomial, q: LMPolynomial) -> LMPolynomial:
    terms = dict(p.terms)
    for key, coeff in q.terms.items():
        new = terms.get(key, 0) + coeff
        if new:
            terms[key] = new
        else:
            terms.pop(key, None)
    return LMPolynomial(terms)


def poly_mul(p: LMPolynomial, q: LMPolynomial) -> LMPolynomial:
    terms: dict[tuple[int, int], int] = {}
    for (l1, m1), c1 in p.terms.items():
        for (l2, m2), c2 in q.terms.items():
            key = (l1 + l2, m1 + m2)
            new = terms.get(key, 0) + c1 * c2
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
    return LMPolynomial(terms)


def poly_mono_mul(p: LMPolynomial, coeff: int, dl: int, dm: int) -> LMPolynomial:
    if coeff == 0:
        return ZERO
    return LMPolynomial({(l + dl, m + dm): c * coeff for (l, m), c in p.terms.items()})


def l_inverse_substitute(p: LMPolynomial) -> LMPolynomial:
    """Substitute L -> L^-1; the image of mirroring on polynomials."""
    return LMPolynomial({(-l, m): c for (l, m), c in p.terms.items()})


def delta_power(k: int) -> LMPolynomial:
    """delta^k for k >= 0 (delta^0 = 1)."""
    out = ONE
    for _ in range(k):
        out = poly_mul(out, DELTA)
    return out


# ------------------------------------------------------------------
# Canonical text form
# ------------------------------------------------------------------

def format_poly(p: LMPolynomial) -> str:
    """Canonical string: terms by m_exp then l_exp ascending.

    The coefficient magnitude is dropped when it is 1 and a variable is
    present, M precedes L, exponent 1 prints as the bare variable, and
    the zero polynomial prints as "0".
    """
    if not p.terms:
        return "0"
    parts = []
    for (l, m) in sorted(p.terms, key=lambda key: (key[1], key[0])):
        coeff = p.terms[(l, m)]
        mag = abs(coeff)
        body = ""
        if m != 0:
            body += "M" if m == 1 else f"M^{m}"
        if l != 0:
            body += "L" if l == 1 else f"L^{l}"
        if body and mag != 1:
            body = f"{mag}{body}"
        elif not body:
            body = str(mag)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(parts)


_TERM_RE = re.compile(
    r"(?P<coeff>\d+)?"
    r"(?:M(?:\^(?P<mexp>-?\d+))?)?"
    r"(?:L(?:\^(?P<lexp>-?\d+))?)?"
)


def parse_poly(text: str) -> LMPolynomial:
    """Parse the canonical polynomial form produced by format_poly."""
    s = text.strip()
    if not s:
        raise PolynomialError("empty polynomial string")
    if s == "0":
        return ZERO
    terms: dict[tuple[int, int], int] = {}
    pos = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    while True:
        frag = s[pos:].lstrip()
        pos = len(s) - len(frag)
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise PolynomialError(f"malformed term at {s[pos:pos + 12]!r}")
        raw = s[pos:m.end()]
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        m_exp = 0
        if "M" in raw:
            m_exp = int(m.group("mexp")) if m.group("mexp") else 1
        l_exp = 0
        if "L" in raw:
            l_exp = int(m.group("lexp")) if m.group("lexp") else 1
        key = (l_exp, m_exp)
        if key in terms:
            raise PolynomialError(f"duplicate term M^{m_exp}L^{l_exp}")
        terms[key] = sign * coeff
        pos = m.end()
        rest = s[pos:].strip()
        if not rest:
            break
        sep = re.match(r"\s*([+-])\s*", s[pos:])
        if sep is None:
            raise PolynomialError(f"expected separator at {s[pos:pos + 12]!r}")
        sign = 1 if sep.group(1) == "+" else -1
        pos += sep.end()
    return LMPolynomial(terms)


# ------------------------------------------------------------------
# Skein engine
# ------------------------------------------------------------------

def switch_crossing(d: Diagram, label: int) -> Diagram:
    """Exchange over/under at one crossing; the crossing sign flips."""
    comps = tuple(
        tuple(
            Token("b" if t.letter == "a" else "a", t.label, -t.sign)
            if t.label == label
            else t
            for t in comp
        )
        for comp in d.components
    )
    return Diagram(comps, validate=False)


def smooth_crossing(d: Diagram, label: int) -> tuple[Diagram | None, int]:
    """Oriented smoothing of one crossing.

    Returns (diagram, vanished) where vanished counts components that
    became crossing-free unknots and were dropped; the diagram is None
    when nothing remains.  Smoothing a self-crossing splits its
    component in two, smoothing an inter-component crossing merges the
    two components.
    """
    hits = []
    for ci, comp in enumerate(d.components):
        for i, tok in enumerate(comp):
            if tok.label == label:
                hits.append((ci, i))
    if len(hits) != 2:
        raise ValueError(f"label {label} not in diagram")
    (c1, i1), (c2, i2) = hits
    comps = list(d.components)
    if c1 == c2:
        comp = comps[c1]
        lo, hi = sorted((i1, i2))
        between = comp[lo + 1:hi]
        around = comp[hi + 1:] + comp[:lo]
        comps[c1:c1 + 1] = [between, around]
    else:
        a, b = comps[c1], comps[c2]
        merged = a[i1 + 1:] + a[:i1] + b[i2 + 1:] + b[:i2]
        comps[c1] = merged
        del comps[c2]
    kept = [c for c in comps if c]
    vanished = len(comps) - len(kept)
    if not kept:
        return None, vanished
    return Diagram(kept, validate=False).canonical(), vanished


def _first_ascending(d: Diagram) -> Token | None:
    """First token whose label is met for the first time on the under-strand."""
    seen: set[int] = set()
    for comp in d.components:
        for tok in comp:
            if tok.label in seen:
                continue
            seen.add(tok.label)
            if tok.letter == "b":
                return tok
    return None


def _split_groups(d: Diagram) -> list[Diagram]:
    """Partition components into label-connected sub-diagrams."""
    n = len(d.components)
    if n == 1:
        return [d]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[int, int] = {}
    for ci, comp in enumerate(d.components):
        for tok in comp:
            if tok.label in owner:
                ra, rb = find(owner[tok.label]), find(ci)
                if ra != rb:
                    parent[rb] = ra
            else:
                owner[tok.label] = ci
    groups: dict[int, list] = {}
    for ci, comp in enumerate(d.components):
        groups.setdefault(find(ci), []).append(comp)
    if len(groups) == 1:
        return [d]
    return [Diagram(comps, validate=False).canonical() for comps in groups.values()]


class _Engine:
    """Iterative skein-tree evaluator with memoized sub-diagram values."""

    def __init__(self, max_nodes: int, simplify_branches: bool, cache: dict):
        self.max_nodes = max_nodes
        self.simplify_branches = simplify_branches
        self.values = cache
        self.nodes = 0

    def _prepare(self, d: Diagram) -> Diagram:
        if self.simplify_branches:
            d = _reduce(d)
        return d.canonical()

    def evaluate(self, d: Diagram) -> LMPolynomial:
        root = self._prepare(d)
        stack: list[tuple[str, Diagram]] = [(format_egc(root), root)]
        plans: dict[str, tuple] = {}
        while stack:
            key, diagram = stack[-1]
            if key in self.values:
                stack.pop()
                continue
            plan = plans.get(key)
            if plan is None:
                plan = self._decompose(diagram)
                plans[key] = plan
            kind, children, extra, weights = plan
            missing = [(k, sub) for k, sub in children if k not in self.values]
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            if kind == "sum":
                total = extra  # constant contribution
                for (k, _), weight in zip(children, weights):
                    total = poly_add(total, poly_mul(weight, self.values[k]))
                self.values[key] = total
            else:  # product of split factors
                total = extra  # delta^(groups-1)
                for k, _ in children:
                    total = poly_mul(total, self.values[k])
                self.values[key] = total
        return self.values[format_egc(root)]

    def _decompose(self, d: Diagram) -> tuple:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise SkeinLimitError(
                f"skein tree exceeded {self.max_nodes} nodes"
            )
        groups = _split_groups(d)
        if len(groups) > 1:
            children = [(format_egc(g), g) for g in groups]
            return ("product", children, delta_power(len(groups) - 1))
        bad = _first_ascending(d)
        if bad is None:
            value = delta_power(len(d.components) - 1)
            return ("sum", [], value, [])
        # Skein at the offending crossing.  With e the crossing sign:
        #   e = +1:  H(D) = -L^-2 H(switched) - L^-1 M H(smoothed)
        #   e = -1:  H(D) = -L^+2 H(switched) - L^+1 M H(smoothed)
        le = -2 if bad.sign > 0 else 2
        w_switch = LMPolynomial.monomial(-1, le, 0)
        w_smooth = LMPolynomial.monomial(-1, le // 2, 1)
        children = []
        weights = []
        const = ZERO
        switched = self._prepare(switch_crossing(d, bad.label))
        children.append((format_egc(switched), switched))
        weights.append(w_switch)
        smoothed, vanished = smooth_crossing(d, bad.label)
        if smoothed is None:
            const = poly_mul(w_smooth, delta_power(vanished - 1))
        else:
            smoothed = self._prepare(smoothed)
            children.append((format_egc(smoothed), smoothed))
            weights.append(poly_mul(w_smooth, delta_power(vanished)))
        return ("sum", children, const, weights)


def homfly(
    d: Diagram,
    *,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    max_nodes: int = DEFAULT_MAX_NODES,
    simplify_branches: bool = True,
    cache: dict | None = None,
) -> LMPolynomial:
    """HOMFLY-PT polynomial of a diagram in the LM normalization.

    Raises SkeinLimitError when the input exceeds max_crossings or the
    resolution tree exceeds max_nodes.  A cache dict may be shared
    across calls; it only ever accumulates finished values.
    """
    if d.crossings > max_crossings:
        raise SkeinLimitError(
            f"diagram has {d.crossings} crossings (cap {max_crossings})"
        )
    engine = _Engine(max_nodes, simplify_branches, {} if cache is None else cache)
    return engine.evaluate(d)


def homfly_lines(lines: Iterable[str], **kwargs) -> list[str]:
    """Batch form: one canonical polynomial string per EGC line."""
    cache: dict = kwargs.pop("cache", {})
    return [
        format_poly(homfly(parse_egc(line), cache=cache, **kwargs)) for line in lines
    ]
