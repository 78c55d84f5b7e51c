"""Extended Gauss codes (EGCs).

An EGC records a link diagram as one token per crossing pass, read off
along an oriented traversal of every component.  Each token carries

* a letter, ``a`` when the strand passes over the crossing and ``b``
  when it passes under,
* the crossing label (a positive integer), and
* the crossing sign, ``+`` or ``-``.

A valid diagram uses every label exactly twice, once with each letter,
with the same sign on both passes.  Components of a link are separated
by ``,`` on a single line and share one global label space.
"""

from __future__ import annotations

import re
from typing import Iterable, NamedTuple

from .errors import EgcError

_TOKEN_RE = re.compile(r"\s*([ab])(\d+)([+-])\s*")


class Token(NamedTuple):
    letter: str  # "a" = over, "b" = under
    label: int
    sign: int  # +1 or -1

    def __str__(self) -> str:
        return f"{self.letter}{self.label}{'+' if self.sign > 0 else '-'}"


class Diagram:
    """Immutable link diagram given by per-component cyclic token sequences."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Iterable[Token]], validate: bool = True):
        comps = tuple(tuple(c) for c in components)
        object.__setattr__(self, "components", comps)
        if validate:
            self._validate()

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Diagram is immutable")

    def _validate(self) -> None:
        if not self.components:
            raise EgcError("diagram has no components")
        letters: dict[int, set[str]] = {}
        signs: dict[int, int] = {}
        for comp in self.components:
            if not comp:
                raise EgcError("empty component")
            for tok in comp:
                if tok.letter not in ("a", "b") or tok.sign not in (1, -1):
                    raise EgcError(f"bad token {tok!r}")
                if tok.label < 1:
                    raise EgcError(f"label {tok.label} is not a positive integer")
                if tok.label in signs and signs[tok.label] != tok.sign:
                    raise EgcError(f"label {tok.label} occurs with both signs")
                signs[tok.label] = tok.sign
                seen = letters.setdefault(tok.label, set())
                if tok.letter in seen:
                    raise EgcError(f"label {tok.label} has letter '{tok.letter}' twice")
                seen.add(tok.letter)
        for label, seen in letters.items():
            if len(seen) != 2:
                raise EgcError(f"label {label} occurs only once")

    @property
    def crossings(self) -> int:
        return sum(len(c) for c in self.components) // 2

    def labels(self) -> list[int]:
        """Labels in order of first occurrence along the traversal."""
        seen: list[int] = []
        got: set[int] = set()
        for comp in self.components:
            for tok in comp:
                if tok.label not in got:
                    got.add(tok.label)
                    seen.append(tok.label)
        return seen

    def sign_of(self, label: int) -> int:
        for comp in self.components:
            for tok in comp:
                if tok.label == label:
                    return tok.sign
        raise EgcError(f"label {label} not in diagram")

    def canonical(self) -> "Diagram":
        """Relabel to the contiguous set 1..c in order of first occurrence."""
        mapping = {old: new for new, old in enumerate(self.labels(), start=1)}
        if all(k == v for k, v in mapping.items()):
            return self
        comps = tuple(
            tuple(Token(t.letter, mapping[t.label], t.sign) for t in comp)
            for comp in self.components
        )
        return Diagram(comps, validate=False)

    def is_canonical(self) -> bool:
        return self.labels() == list(range(1, self.crossings + 1))

    def __eq__(self, other) -> bool:
        return isinstance(other, Diagram) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"Diagram({format_egc(self)!r})"


def parse_egc(line: str) -> Diagram:
    """Parse one EGC line into a canonically labeled Diagram.

    Whitespace between tokens is tolerated; labels are renumbered to
    1..c in order of first occurrence.
    """
    components = []
    for part in line.split(","):
        tokens = []
        pos = 0
        while pos < len(part):
            m = _TOKEN_RE.match(part, pos)
            if m is None:
                if part[pos:].strip() == "":
                    break
                raise EgcError(f"syntax error at {part[pos:pos + 8]!r}")
            letter, label, sign = m.groups()
            tokens.append(Token(letter, int(label), 1 if sign == "+" else -1))
            pos = m.end()
        if not tokens:
            raise EgcError("empty component")
        components.append(tokens)
    return Diagram(components).canonical()


def format_egc(d: Diagram) -> str:
    """Serialize a Diagram; inverse of parse_egc on canonical diagrams."""
    return ",".join("".join(str(t) for t in comp) for comp in d.components)


def mirror(d: Diagram) -> Diagram:
    """Mirror image: reflect through the projection plane.

    Every pass swaps over/under and every crossing sign flips.
    """
    comps = tuple(
        tuple(Token("b" if t.letter == "a" else "a", t.label, -t.sign) for t in comp)
        for comp in d.components
    )
    return Diagram(comps, validate=False)


def reverse(d: Diagram) -> Diagram:
    """Reverse the orientation of every component."""
    comps = tuple(tuple(reversed(comp)) for comp in d.components)
    return Diagram(comps, validate=False).canonical()


def writhe(d: Diagram) -> int:
    """Sum of crossing signs over distinct labels."""
    seen: set[int] = set()
    total = 0
    for comp in d.components:
        for tok in comp:
            if tok.label not in seen:
                seen.add(tok.label)
                total += tok.sign
    return total


def connected_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Connected sum of two one-component diagrams.

    The second diagram's tokens are appended after the first's with
    labels shifted past the first diagram's crossing count.
    """
    if len(d1.components) != 1 or len(d2.components) != 1:
        raise EgcError("connected_sum requires one-component diagrams")
    d1 = d1.canonical()
    d2 = d2.canonical()
    shift = d1.crossings
    merged = d1.components[0] + tuple(
        Token(t.letter, t.label + shift, t.sign) for t in d2.components[0]
    )
    return Diagram((merged,), validate=False)
