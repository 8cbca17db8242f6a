"""Finite descriptions of subsets of the complex plane.

A :class:`Family` is the geometric sequence ``limit + r*q**n`` for
``n >= 1`` (the limit itself is *not* a member).  A :class:`SymbolicSet` is
a finite point set plus finitely many families.

The geometry helpers in this module decide when two families overlap.
Families with the same limit and the same ratio either share a whole tail
("aligned": one ``r`` is the other times an integer power of ``q``) or are
disjoint.  Families with different limits can only meet at finitely many
indices, and :func:`family_collisions` computes an exact search bound for
them.  The one case that is only searched to a fixed depth is same limit
with different ratios; finding two or more meetings there signals a
multiplicative dependence between the ratios, which is rejected with
:class:`CollisionDepthExceeded`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Generic, Iterable, Optional, TypeVar

from .errors import CollisionDepthExceeded, NotFinitelyRepresentable
from .exact import ONE, ZERO, GaussianRational, geom_member

DEFAULT_DEPTH = 64

P = TypeVar("P")


@dataclass(frozen=True)
class Family:
    limit: GaussianRational
    r: GaussianRational
    q: GaussianRational

    def __post_init__(self):
        if self.r.is_zero():
            raise ValueError("family requires r != 0")
        if not 0 < self.q.abs_sq() < 1:
            raise ValueError("family requires 0 < |q|^2 < 1")

    def point(self, n: int) -> GaussianRational:
        return self.limit + self.r * self.q ** n

    def index_of(self, p: GaussianRational) -> Optional[int]:
        return geom_member(self.limit, self.r, self.q, p)

    def scaled(self, nu: GaussianRational) -> "Family":
        return Family(nu * self.limit, nu * self.r, self.q)

    def shifted(self, k: int) -> "Family":
        """Drop the first ``k`` members."""
        return Family(self.limit, self.r * self.q ** k, self.q)

    def sort_key(self):
        return (self.limit.sort_key(), self.q.sort_key(), self.r.sort_key())

    def __str__(self) -> str:
        return f"{{{self.limit} + ({self.r})*({self.q})^n : n>=1}}"


def align_offset(f: Family, g: Family) -> Optional[int]:
    """Integer ``k`` with ``f.r == g.r * q**k`` when ``f`` and ``g`` share
    limit and ratio, else ``None``.  ``k >= 0`` means ``f`` is a tail of ``g``."""
    if f.limit != g.limit or f.q != g.q:
        return None
    t = f.r / g.r
    if t == ONE:
        return 0
    n = geom_member(ZERO, ONE, f.q, t)
    if n is not None:
        return n
    n = geom_member(ZERO, ONE, f.q, t.inverse())
    if n is not None:
        return -n
    return None


def _first_index_within(f: Family, radius_sq: Fraction) -> int:
    """Smallest ``n`` with ``|f.point(n) - f.limit|**2 < radius_sq``."""
    mod = f.r.abs_sq()
    qa = f.q.abs_sq()
    n = 0
    while mod >= radius_sq:
        mod *= qa
        n += 1
    return n


def family_collisions(f: Family, g: Family, depth: int = DEFAULT_DEPTH) -> list[tuple[int, int]]:
    """All index pairs ``(i, j)`` with ``f.point(i) == g.point(j)``.

    ``f`` and ``g`` must not be aligned (see :func:`align_offset`).
    """
    if f.limit == g.limit:
        if f.q == g.q:
            return []
        bound_f = bound_g = depth
    else:
        # Past these indices each family sits within half the gap of its
        # own limit, so a meeting needs at least one early index.
        quarter_gap = (f.limit - g.limit).abs_sq() / 4
        bound_f = _first_index_within(f, quarter_gap)
        bound_g = _first_index_within(g, quarter_gap)
        if max(bound_f, bound_g) > depth:
            raise CollisionDepthExceeded(
                f"collision search bound {max(bound_f, bound_g)} exceeds depth {depth}"
            )
    found = set()
    for i in range(1, bound_f + 1):
        j = g.index_of(f.point(i))
        if j is not None:
            found.add((i, j))
    for j in range(1, bound_g + 1):
        i = f.index_of(g.point(j))
        if i is not None:
            found.add((i, j))
    if f.limit == g.limit and len(found) > 1:
        raise CollisionDepthExceeded(
            f"families {f} and {g} meet repeatedly with unequal ratios"
        )
    return sorted(found)


def normalize(
    points: Iterable[tuple[GaussianRational, P]],
    families: Iterable[tuple[Family, P]],
    combine: Callable[[list[P]], P],
    *,
    limits: Iterable[GaussianRational] = (),
    depth: int = DEFAULT_DEPTH,
) -> tuple[dict[GaussianRational, P], list[tuple[Family, P]]]:
    """Resolve overlaps between labelled points and labelled families.

    Aligned families are merged into one common tail, leading members being
    split off as points.  Any family member that coincides with a point,
    with a member of another family or with one of ``limits`` is split off
    too, together with every earlier member.  Labels of coinciding items
    are merged with ``combine``.  Points lying in ``limits`` are dropped.

    Returns the point labels and the remaining, pairwise disjoint families.
    """
    pts: dict[GaussianRational, list[P]] = {}
    for p, lab in points:
        pts.setdefault(p, []).append(lab)
    fams = list(families)
    limit_set = set(limits)

    # aligned groups
    groups: list[list[tuple[Family, P, int]]] = []
    for fam, lab in fams:
        for grp in groups:
            k = align_offset(fam, grp[0][0])
            if k is not None:
                grp.append((fam, lab, k))
                break
        else:
            groups.append([(fam, lab, 0)])
    merged: list[tuple[Family, P]] = []
    for grp in groups:
        ref = grp[0][0]
        kmax = max(k for _, _, k in grp)
        for fam, lab, k in grp:
            for j in range(k + 1, kmax + 1):
                pts.setdefault(ref.point(j), []).append(lab)
        merged.append((ref.shifted(kmax), combine([lab for _, lab, _ in grp])))

    # meetings with points, limits and other families
    peel = [0] * len(merged)
    for idx, (fam, _) in enumerate(merged):
        for p in list(pts) + list(limit_set):
            n = fam.index_of(p)
            if n is not None:
                peel[idx] = max(peel[idx], n)
    for a in range(len(merged)):
        for b in range(a + 1, len(merged)):
            for i, j in family_collisions(merged[a][0], merged[b][0], depth):
                peel[a] = max(peel[a], i)
                peel[b] = max(peel[b], j)

    out_fams: list[tuple[Family, P]] = []
    for (fam, lab), k in zip(merged, peel):
        for j in range(1, k + 1):
            pts.setdefault(fam.point(j), []).append(lab)
        out_fams.append((fam.shifted(k), lab))

    out_pts = {p: combine(labs) for p, labs in pts.items() if p not in limit_set}
    return out_pts, out_fams


def _no_label(labels):
    return None


@dataclass(frozen=True)
class SymbolicSet:
    """Sorted, overlap-free union of points and families."""

    points: tuple[GaussianRational, ...] = ()
    families: tuple[Family, ...] = ()

    @classmethod
    def build(
        cls,
        points: Iterable[GaussianRational] = (),
        families: Iterable[Family] = (),
        depth: int = DEFAULT_DEPTH,
    ) -> "SymbolicSet":
        pts, fams = normalize(
            ((p, None) for p in points),
            ((f, None) for f in families),
            _no_label,
            depth=depth,
        )
        return cls(
            tuple(sorted(pts, key=GaussianRational.sort_key)),
            tuple(sorted({f for f, _ in fams}, key=Family.sort_key)),
        )

    @classmethod
    def empty(cls) -> "SymbolicSet":
        return cls()

    def is_empty(self) -> bool:
        return not self.points and not self.families

    def is_finite(self) -> bool:
        return not self.families

    def __contains__(self, p: GaussianRational) -> bool:
        if p in self.points:
            return True
        return any(f.index_of(p) is not None for f in self.families)

    def union(self, other: "SymbolicSet", depth: int = DEFAULT_DEPTH) -> "SymbolicSet":
        return SymbolicSet.build(
            self.points + other.points, self.families + other.families, depth
        )

    def scale(self, nu: GaussianRational, depth: int = DEFAULT_DEPTH) -> "SymbolicSet":
        if self.is_empty():
            return self
        if nu.is_zero():
            return SymbolicSet((nu,))
        return SymbolicSet.build(
            [nu * p for p in self.points], [f.scaled(nu) for f in self.families], depth
        )

    def product(self, other: "SymbolicSet", depth: int = DEFAULT_DEPTH) -> "SymbolicSet":
        """Elementwise product ``{x*y : x in self, y in other}``."""
        if self.is_empty() or other.is_empty():
            return SymbolicSet()
        if self.families and other.families:
            raise NotFinitelyRepresentable(
                "product of two sets with accumulating families"
            )
        points = [x * y for x in self.points for y in other.points]
        fams: list[Family] = []
        for fam_side, pt_side in ((self.families, other.points), (other.families, self.points)):
            for f in fam_side:
                for nu in pt_side:
                    if nu.is_zero():
                        points.append(nu)
                    else:
                        fams.append(f.scaled(nu))
        return SymbolicSet.build(points, fams, depth)

    def _family_gap(self, f: Family) -> Optional[list[GaussianRational]]:
        """Members of ``f`` outside ``self``, when only finitely many; ``None``
        when ``f`` is not covered up to finitely many members."""
        best = None
        for g in self.families:
            k = align_offset(f, g)
            if k is not None and (best is None or k > best):
                best = k
        if best is None:
            return None
        if best >= 0:
            return []
        return [f.point(j) for j in range(1, -best + 1) if f.point(j) not in self]

    def issubset(self, other: "SymbolicSet") -> bool:
        if any(p not in other for p in self.points):
            return False
        for f in self.families:
            gap = other._family_gap(f)
            if gap is None or gap:
                return False
        return True

    def same_as(self, other: "SymbolicSet") -> bool:
        """Set equality decided semantically, not structurally."""
        return self.issubset(other) and other.issubset(self)

    def minus(self, other: "SymbolicSet", depth: int = DEFAULT_DEPTH) -> "SymbolicSet":
        """``self - other``; a family only partly covered by ``other`` is
        reduced to its uncovered members."""
        points = [p for p in self.points if p not in other]
        fams = []
        for f in self.families:
            gap = other._family_gap(f)
            if gap is not None:
                points.extend(gap)
                continue
            k = 0
            for p in other.points:
                k = max(k, f.index_of(p) or 0)
            for g in other.families:
                for i, _ in family_collisions(f, g, depth):
                    k = max(k, i)
            points.extend(f.point(j) for j in range(1, k + 1) if f.point(j) not in other)
            fams.append(f.shifted(k))
        return SymbolicSet.build(points, fams, depth)

    def __str__(self) -> str:
        parts = [str(p) for p in self.points] + [str(f) for f in self.families]
        return "{" + ", ".join(parts) + "}"
