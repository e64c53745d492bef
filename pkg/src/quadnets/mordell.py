"""Reducible and singular members of a net, and the Mordell-Weil rank rho = n - d - 1."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .baselocus import BaseLocus, Completeness, find_rational_basepoints, label_chains
from .exact.linalg import nullspace, rank
from .quadric import (
    Net,
    PlaneKind,
    ProjPoint,
    SingularMemberKind,
    factor_into_planes,
    linear_form_str,
    projective_points,
    singular_locus,
    singular_member_at,
)
from .quartic import discriminant_quartic, singular_points


class MemberKind(enum.Enum):
    DOUBLE_PLANE = "DoublePlane"
    TWO_PLANES = "TwoPlanes"
    CONE = "IrreducibleCone"


@dataclass(frozen=True)
class SingularMemberReport:
    lam: ProjPoint
    kind: MemberKind
    singular_locus: tuple  # basis vectors of the vertex / line / plane
    basepoints: tuple  # basepoints lying on the singular locus
    planes: tuple = ()  # linear forms, when rational
    rational: bool = True  # False when the planes are defined only over an extension

    def describe(self):
        if self.kind is MemberKind.TWO_PLANES and self.rational:
            body = "(" + ")*(".join(linear_form_str(v, self.lam.field) for v in self.planes) + ")"
        elif self.kind is MemberKind.DOUBLE_PLANE:
            body = "(" + linear_form_str(self.planes[0], self.lam.field) + ")^2"
        else:
            body = self.kind.value
        return f"{body} at {self.lam}"


@dataclass(frozen=True)
class Rank2Enumeration:
    members: tuple
    completeness: Completeness
    method: str
    unresolved: tuple = ()

    @property
    def certified(self):
        return self.completeness is Completeness.CERTIFIED


def _in_span(point, basis, F):
    if not basis:
        return False
    return rank(basis + [list(point)], F) == len(basis)


def _report(net: Net, lam: ProjPoint, basepoints):
    member = net.member(lam)
    dec = factor_into_planes(member)
    locus = singular_locus(member)
    on = tuple(p for p in basepoints if _in_span(p, locus, net.field))
    if dec.kind is PlaneKind.DOUBLE_PLANE:
        kind = MemberKind.DOUBLE_PLANE
    elif dec.geometric_rank2:
        kind = MemberKind.TWO_PLANES
    else:
        kind = MemberKind.CONE
    return SingularMemberReport(lam, kind, tuple(tuple(v) for v in locus), on, dec.planes, not dec.splits_over_extension)


def enumerate_rank2(net: Net, basepoints=()) -> Rank2Enumeration:
    """The members of the net that are unions of two distinct planes.

    Over GF(p) the whole plane of members is scanned.  Over QQ the candidates are
    the singular points of the discriminant quartic: a member of rank at most 2
    has vanishing adjugate, hence is a singular point of the determinant.
    """
    F = net.field
    members = []
    if F.is_finite:
        for lam in projective_points(F, 2):
            m = net.member(lam)
            if m.is_zero():
                continue
            if factor_into_planes(m).geometric_rank2:
                members.append(_report(net, lam, basepoints))
        unresolved = ()
        done = Completeness.CERTIFIED
        method = "scan"
        if F.characteristic != 2:
            sp = singular_points(discriminant_quartic(net))
            unresolved = sp.unresolved
            done = sp.completeness
            method = "scan+discriminant"
        return Rank2Enumeration(tuple(members), done, method, unresolved)
    if F.characteristic == 2:
        raise ValueError("characteristic 2 is supported over GF(2) only")
    sp = singular_points(discriminant_quartic(net))
    for lam in sp.points:
        m = net.member(lam)
        if m.rank() <= 2 and factor_into_planes(m).geometric_rank2:
            members.append(_report(net, lam, basepoints))
    return Rank2Enumeration(tuple(members), sp.completeness, "discriminant", sp.unresolved)


@dataclass(frozen=True)
class SingularMemberCounts:
    A: int
    B: int
    C: int
    D: int
    double_planes: tuple
    rank2: tuple
    cones: tuple  # (chain, report)

    @property
    def h0(self):
        return self.A + self.B + self.C + self.D


def classify_singular_members(net: Net, chains, rank2: Rank2Enumeration | None = None) -> SingularMemberCounts:
    """Counts of double planes (A), rank-2 members singular at a basepoint (B) or not (C), and cones (D)."""
    points = [c.point for c in chains]
    rank2 = rank2 or enumerate_rank2(net, points)
    doubles = {}
    cones = []
    for chain in chains:
        sm = singular_member_at(net, chain.point)
        if sm.kind is SingularMemberKind.VIOLATION:
            raise ValueError(f"Assumption 1 fails at {chain.point}")
        if sm.kind is SingularMemberKind.NONE:
            continue
        rep = _report(net, sm.lam, points)
        if rep.kind is MemberKind.DOUBLE_PLANE:
            doubles[rep.lam] = rep
        elif rep.kind is MemberKind.CONE:
            cones.append((chain, rep))
    B = sum(1 for r in rank2.members if r.basepoints)
    C = len(rank2.members) - B
    return SingularMemberCounts(len(doubles), B, C, len(cones), tuple(doubles.values()), rank2.members, tuple(cones))


def kernel_rank_from_members(chains, counts: SingularMemberCounts) -> int:
    """``rank ker r = 1 + sum_F r_F`` rebuilt from the singular members.

    Each member contributes the components it adds beyond the generic fibre:
    a cone at ``p_i`` gives ``m_i - 1``, a rank-2 member gives one extra plane
    plus ``m_i - 1`` for every basepoint on its singular line, and a double
    plane gives ``sum (m_i - 1)`` over all basepoints.
    """
    mult = {c.point: c.multiplicity for c in chains}
    total = 0
    for chain, _ in counts.cones:
        total += chain.multiplicity - 1
    for r in counts.rank2:
        total += 1 + sum(mult[p] - 1 for p in r.basepoints)
    for _ in counts.double_planes:
        total += sum(m - 1 for m in mult.values())
    return 1 + total


@dataclass(frozen=True)
class RankReport:
    n: int
    d: int
    rho: int
    A: int
    B: int
    C: int
    D: int
    multiplicities: tuple
    rho_from_members: int
    rank2_certified: bool

    @property
    def h0(self):
        return self.A + self.B + self.C + self.D

    @property
    def extremal(self):
        return self.rho == 0


def mordell_weil_rank(net: Net, locus: BaseLocus | None = None, rank2: Rank2Enumeration | None = None) -> RankReport:
    """Assemble ``n``, ``d``, ``rho = n - d - 1`` and the counts ``A..D``."""
    locus = locus or find_rational_basepoints(net)
    if not locus.certified:
        from .baselocus import IncompleteBaseLocus, TOTAL_DEGREE

        raise IncompleteBaseLocus(locus.points, TOTAL_DEGREE - locus.total)
    chains = label_chains(locus.points, locus.multiplicities)
    rank2 = rank2 or enumerate_rank2(net, locus.points)
    counts = classify_singular_members(net, chains, rank2)
    n = len(chains)
    d = len(rank2.members)
    rho = n - d - 1
    alt = 8 - kernel_rank_from_members(chains, counts)
    return RankReport(
        n, d, rho, counts.A, counts.B, counts.C, counts.D,
        tuple(c.multiplicity for c in chains), alt, rank2.certified,
    )


__all__ = [
    "MemberKind",
    "Rank2Enumeration",
    "RankReport",
    "SingularMemberCounts",
    "SingularMemberReport",
    "classify_singular_members",
    "enumerate_rank2",
    "kernel_rank_from_members",
    "mordell_weil_rank",
]
