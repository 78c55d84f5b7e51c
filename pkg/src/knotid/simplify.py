"""Reidemeister I/II reduction of extended Gauss codes.

Rewrites only ever remove crossings, so the knot or link type and the
HOMFLY-PT polynomial are preserved.  A component is never reduced below
one self-crossing: when a rewrite would empty a component it is replaced
by the canonical twist ``b?-a?-`` instead, so unknotted components and
split pieces stay visible in the output.
"""

from __future__ import annotations

from .egc import Diagram, Token


def _adjacent_pairs(comp):
    """Cyclically adjacent token index pairs of one component."""
    n = len(comp)
    if n < 2:
        return
    for i in range(n):
        yield i, (i + 1) % n


def reduce_r1_once(d: Diagram) -> Diagram | None:
    """Remove one kink: a label whose two passes are cyclically adjacent.

    Returns None when no removable kink exists.  A kink that is the only
    crossing of its component is protected and never removed.
    """
    best = None  # (label, comp index, first token index)
    for ci, comp in enumerate(d.components):
        for i, j in _adjacent_pairs(comp):
            if comp[i].label != comp[j].label:
                continue
            if len(comp) == 2:
                continue  # protected final twist
            if best is None or comp[i].label < best[0]:
                best = (comp[i].label, ci, i)
    if best is None:
        return None
    _, ci, i = best
    comp = d.components[ci]
    keep = [t for k, t in enumerate(comp) if k not in (i, (i + 1) % len(comp))]
    comps = list(d.components)
    comps[ci] = tuple(keep)
    return Diagram(comps, validate=False).canonical()


def reduce_r2_once(d: Diagram) -> Diagram | None:
    """Remove one bigon: labels x != y adjacent once over-over and once
    under-under, with opposite signs.

    Returns None when no such site exists.  Components emptied by the
    removal are normalized to a protected twist.
    """
    sites: dict[frozenset, dict[str, tuple[int, int]]] = {}
    for ci, comp in enumerate(d.components):
        for i, j in _adjacent_pairs(comp):
            t1, t2 = comp[i], comp[j]
            if t1.label == t2.label or t1.letter != t2.letter:
                continue
            if t1.sign != -t2.sign:
                continue
            key = frozenset((t1.label, t2.label))
            sites.setdefault(key, {})[t1.letter] = (ci, i)
    ready = [key for key, hit in sites.items() if "a" in hit and "b" in hit]
    if not ready:
        return None
    key = min(ready, key=lambda k: sorted(k))
    hit = sites[key]
    drop: dict[int, set[int]] = {}
    for ci, i in hit.values():
        n = len(d.components[ci])
        drop.setdefault(ci, set()).update((i, (i + 1) % n))
    fresh = max(t.label for comp in d.components for t in comp)
    comps = []
    for ci, comp in enumerate(d.components):
        if ci not in drop:
            comps.append(comp)
            continue
        keep = tuple(t for k, t in enumerate(comp) if k not in drop[ci])
        if keep:
            comps.append(keep)
        else:
            fresh += 1
            comps.append((Token("b", fresh, -1), Token("a", fresh, -1)))
    return Diagram(comps, validate=False).canonical()


def simplify(d: Diagram) -> Diagram:
    """Apply R1/R2 reductions to a fixpoint.

    Kinks are removed first, then bigons, always at the site with the
    smallest involved label; the result is canonically labeled.
    """
    current = d.canonical()
    while True:
        step = reduce_r1_once(current)
        if step is None:
            step = reduce_r2_once(current)
        if step is None:
            return current
        current = step


def simplify_lines(lines) -> list[str]:
    """Batch form: one simplified EGC per input EGC line, order kept."""
    from .egc import format_egc, parse_egc

    return [format_egc(simplify(parse_egc(line))) for line in lines]
