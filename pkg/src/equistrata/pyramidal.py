"""The pyramidal D_n action and the realization of the G4 strata.

The action is the epimorphism from the orbifold group of (0; 2,2,2,2,n)
onto D_n sending the four order-2 generators to sigma, rho*sigma,
rho*sigma, rho*sigma and the order-n generator to rho.  Degenerating a
two-curve multicurve {gamma1, gamma2} on the quotient produces covering
data whose dual graph is a genus-n stable graph; choosing the arc gamma1
with rotation order m and the surrounding curve gamma2 with coset order d
realizes exactly the family graph G4(n, m, d).

The construction follows two closed forms:

  * the arc with intersection parameter x has holonomies S, S_b with
    S * S_b = rho^x, so m = n / gcd(n, x); taking x = n/m hits a given m;
  * the curve through the handle satisfies Phi(z) =
    rho^((k+eps)(x-1)) * sigma1 with k = n/m, and the coset order of
    R = S * Phi(z) modulo <rho^k> solves to d when x is the smallest
    positive solution of x = -(k+eps)^(-1) (k/d - t) + 1 mod k, where
    S * sigma1 = rho^t.  Both eps = +-1 and every symmetry sigma1 work;
    they are exposed as parameters and swept in verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .covering import CoveringData, CurveData, Interior, PieceData, Separating, dual_graph
from .dihedral import (
    DihedralGroup,
    GroupElement,
    Word,
    quotient_coset_order,
    subgroup_generated,
)
from .errors import ConsistencyError
from .families import FamilyTag, make_g4
from .pants import DTCoordinates, five_holed_sphere, four_holed_sphere
from .stable_graphs import StableGraph, is_isomorphic


@dataclass(frozen=True)
class PyramidalAction:
    """Generator images of the pyramidal epimorphism onto D_n."""

    n: int
    images: tuple

    def product(self) -> GroupElement:
        acc = DihedralGroup(self.n).identity()
        for g in self.images:
            acc = acc * g
        return acc


def pyramidal_epimorphism(n: int) -> PyramidalAction:
    """Images (sigma, rho sigma, rho sigma, rho sigma, rho), relations verified."""
    if n < 3:
        raise ValueError(f"the pyramidal action needs n >= 3, got {n}")
    group = DihedralGroup(n)
    images = (
        group.sigma(0),
        group.sigma(1),
        group.sigma(1),
        group.sigma(1),
        group.rho(1),
    )
    action = PyramidalAction(n, images)
    for g in images[:4]:
        if (g * g) != group.identity():
            raise ConsistencyError(f"generator image {g} is not an involution")
    if images[4].order() != n:
        raise ConsistencyError(f"rotation image {images[4]} has order {images[4].order()}")
    if not action.product().is_identity:
        raise ConsistencyError("generator images do not satisfy the long relation")
    if subgroup_generated(images, group).order != group.order:
        raise ConsistencyError("generator images do not generate D_n")
    return action


@dataclass(frozen=True)
class ArcModel:
    """The handle arc: holonomies S, S_b and its coordinates on the O-preset."""

    n: int
    x: int
    S: GroupElement
    S_b: GroupElement
    m: int
    dt: DTCoordinates

    @property
    def parity(self) -> str:
        return "odd" if self.x % 2 else "even"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "x": self.x,
            "parity": self.parity,
            "S": str(self.S),
            "S_b": str(self.S_b),
            "m": self.m,
            "dt": {"preset": "O5", "coords": list(self.dt.vector())},
        }


@dataclass(frozen=True)
class CurveModel:
    """The curve surrounding the arc: holonomy data and O'-preset coordinates."""

    n: int
    k: int
    epsilon: int
    sigma1: GroupElement
    sigma2: GroupElement
    t: int
    x0: int
    s: GroupElement
    R: GroupElement
    d: int
    dt: DTCoordinates

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "epsilon": self.epsilon,
            "sigma1": str(self.sigma1),
            "sigma2": str(self.sigma2),
            "t": self.t,
            "x0": self.x0,
            "s": str(self.s),
            "R": str(self.R),
            "d": self.d,
            "dt": {"preset": "Oprime4", "coords": list(self.dt.vector())},
        }


@dataclass(frozen=True)
class RealizationWitness:
    arc: ArcModel
    curve: CurveModel
    covering: CoveringData
    graph: StableGraph
    target: FamilyTag

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "arc": self.arc.to_json(),
            "curve": self.curve.to_json(),
            "covering": self.covering.to_json(),
            "graph": self.graph.to_json(),
        }


def _arc_coords(x: int) -> DTCoordinates:
    if x % 2:
        vec = (x, 0, 1, 1, 0, 0, 0)
    else:
        vec = (x, 0, 0, 1, 1, 0, 0)
    return DTCoordinates.from_vector(five_holed_sphere(), vec)


def arc_for_x(n: int, x: int) -> ArcModel:
    """The arc with S * S_b = rho^x; its rotation order is n/gcd(n, x)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if x < 1:
        raise ValueError(f"need x >= 1, got {x}")
    group = DihedralGroup(n)
    if x % 2:
        s_elt = group.sigma(x)
        s_b = group.sigma(0)
    else:
        s_elt = group.sigma(1)
        s_b = group.sigma(1 - x)
    prod = s_elt * s_b
    if prod != group.rho(x):
        raise ConsistencyError(f"S*S_b = {prod}, expected rho^{x % n}")
    return ArcModel(n=n, x=x, S=s_elt, S_b=s_b, m=prod.order(), dt=_arc_coords(x))


def arc_for_m(n: int, m: int) -> ArcModel:
    """The arc realizing rotation order m, via x = n/m."""
    if m < 1 or n % m:
        raise ValueError(f"m={m} must be a positive divisor of n={n}")
    arc = arc_for_x(n, n // m)
    if arc.m != m:
        raise ConsistencyError(f"arc for x={n // m} has m={arc.m}, expected {m}")
    return arc


def _check_eps_sigma(group: DihedralGroup, eps: int, sigma1: GroupElement) -> None:
    if eps not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {eps}")
    if sigma1.n != group.n:
        raise ValueError(f"sigma1 lives in D_{sigma1.n}, expected D_{group.n}")
    if not sigma1.flip:
        raise ValueError(f"sigma1 must be a symmetry, got the rotation {sigma1}")


def phi_z(n: int, k: int, eps: int, sigma1: GroupElement, x: int) -> GroupElement:
    """Closed form rho^((k+eps)(x-1)) sigma1, cross-checked against the
    case-by-case conjugation words."""
    group = DihedralGroup(n)
    _check_eps_sigma(group, eps, sigma1)
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if x < 0:
        raise ValueError(f"need x >= 0, got {x}")
    closed = group.rho((k + eps) * (x - 1)) * sigma1

    a, b = Word.sym("s1"), Word.sym("s2")
    if x == 0:
        word = b
    elif x % 2:
        half = (a * b) ** ((x - 1) // 2)
        word = half * a * half.inverse()
    else:
        pre = (a * b) ** (x // 2 - 1) * a
        word = pre * b * pre.inverse()
    sigma2 = sigma1 * group.rho(k + eps)
    by_cases = word.evaluate({"s1": sigma1, "s2": sigma2}, group)
    if by_cases != closed:
        raise ConsistencyError(
            f"case word gives {by_cases}, closed form gives {closed} "
            f"(n={n}, k={k}, eps={eps}, sigma1={sigma1}, x={x})"
        )
    return closed


def solve_x0(n: int, m: int, d: int, eps: int, sigma1: GroupElement) -> int:
    """Smallest positive x with coset order d for the curve; needs k = n/m > 1."""
    if m < 1 or n % m:
        raise ValueError(f"m={m} must be a positive divisor of n={n}")
    k = n // m
    if k == 1:
        raise ValueError("k = 1 admits any x; handled by curve_for_d directly")
    if d < 1 or k % d:
        raise ValueError(f"d={d} must be a positive divisor of n/m={k}")
    group = DihedralGroup(n)
    _check_eps_sigma(group, eps, sigma1)
    arc = arc_for_m(n, m)
    t_elt = arc.S * sigma1
    if t_elt.flip:
        raise ConsistencyError(f"S*sigma1 = {t_elt} is not a rotation")
    d_prime = k // d
    inv = pow(k + eps, -1, k)
    x0 = (-inv * (d_prime - t_elt.rot) + 1) % k
    return x0 if x0 else k


def _curve_coords(x0: int) -> DTCoordinates:
    if x0 % 2:
        vec = (x0, 0, 1, 1, 0)
    else:
        vec = (x0, 1, 0, 1, 0)
    return DTCoordinates.from_vector(four_holed_sphere(), vec)


def curve_for_d(
    arc: ArcModel, d: int, eps: int = 1, sigma1: Optional[GroupElement] = None
) -> CurveModel:
    """The curve whose pair with the arc has coset order exactly d."""
    n, m = arc.n, arc.m
    k = n // m
    group = DihedralGroup(n)
    if sigma1 is None:
        sigma1 = group.sigma(0)
    _check_eps_sigma(group, eps, sigma1)
    if d < 1 or k % d:
        raise ValueError(f"d={d} must be a positive divisor of n/m={k}")
    if k == 1:
        x0 = 1
    else:
        x0 = solve_x0(n, m, d, eps, sigma1)
    s_elt = phi_z(n, k, eps, sigma1, x0)
    sigma2 = sigma1 * group.rho(k + eps)
    if sigma1 * sigma2 != group.rho(k + eps):
        raise ConsistencyError("sigma2 does not satisfy sigma1*sigma2 = rho^(k+eps)")
    t_elt = arc.S * sigma1
    if t_elt.flip:
        raise ConsistencyError(f"S*sigma1 = {t_elt} is not a rotation")
    r_elt = arc.S * s_elt
    if r_elt.flip:
        raise ConsistencyError(f"R = S*s = {r_elt} is not a rotation")
    rot_sub = subgroup_generated([group.rho(k)], group)
    d_check = quotient_coset_order(r_elt, rot_sub)
    if d_check != d:
        raise ConsistencyError(
            f"R = {r_elt} has coset order {d_check} modulo <rho^{k}>, expected {d}"
        )
    return CurveModel(
        n=n,
        k=k,
        epsilon=eps,
        sigma1=sigma1,
        sigma2=sigma2,
        t=t_elt.rot,
        x0=x0,
        s=s_elt,
        R=r_elt,
        d=d,
        dt=_curve_coords(x0),
    )


def m_of_arc(arc: ArcModel) -> int:
    return (arc.S * arc.S_b).order()


def d_of_pair(arc: ArcModel, curve: CurveModel) -> int:
    group = DihedralGroup(arc.n)
    im1 = subgroup_generated([group.rho(curve.k), curve.s], group)
    return quotient_coset_order(curve.R, im1)


def build_covering_data(arc: ArcModel, curve: CurveModel) -> CoveringData:
    """Covering data of the degenerated multicurve {gamma1, gamma2}."""
    if arc.n != curve.n:
        raise ValueError(f"arc is for n={arc.n}, curve for n={curve.n}")
    n, m, k = arc.n, arc.m, curve.k
    group = DihedralGroup(n)
    im1 = subgroup_generated([group.rho(k), curve.s], group)
    im2 = subgroup_generated([group.rho(1), group.sigma(0)], group)
    im_g1 = subgroup_generated([arc.S, arc.S_b], group)
    im_g2 = subgroup_generated([group.rho(k) * curve.s], group)
    if im1.order != 2 * m:
        raise ConsistencyError(f"|Im Phi_1| = {im1.order}, expected {2 * m}")
    if im_g1.order != 2 * m:
        raise ConsistencyError(f"|Im Phi_gamma1| = {im_g1.order}, expected {2 * m}")
    if im_g2.order != 2:
        raise ConsistencyError(f"|Im Phi_gamma2| = {im_g2.order}, expected 2")
    return CoveringData(
        group=group,
        pieces=(
            PieceData(id=1, chi=Fraction(-1, 2), image=im1),
            PieceData(id=2, chi=Fraction(1, n) - Fraction(1, 2), image=im2),
        ),
        curves=(
            CurveData(id="gamma1", kind=Interior(1), image=im_g1, holonomy=arc.S),
            CurveData(id="gamma2", kind=Separating(1, 2), image=im_g2, holonomy=group.identity()),
        ),
        expected_genus=n,
    )


def empty_multicurve_data(n: int) -> CoveringData:
    """Covering data of the undegenerated pyramidal action: no curves at all.

    The single piece is the full quotient orbifold, chi = 1/n - 1, so the
    dual graph is one vertex of weight n.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    group = DihedralGroup(n)
    full = subgroup_generated([group.rho(1), group.sigma(0)], group)
    return CoveringData(
        group=group,
        pieces=(PieceData(id=1, chi=Fraction(1, n) - 1, image=full),),
        curves=(),
        expected_genus=n,
    )


def realize_g4(
    n: int,
    m: int,
    d: int,
    eps: int = 1,
    sigma1: Optional[GroupElement] = None,
) -> RealizationWitness:
    """Arc + curve + covering engine chain hitting G4(n, m, d) exactly."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if m < 1 or n % m:
        raise ValueError(f"m={m} must be a positive divisor of n={n}")
    if d < 1 or (n // m) % d:
        raise ValueError(f"d={d} must be a positive divisor of n/m={n // m}")
    arc = arc_for_m(n, m)
    curve = curve_for_d(arc, d, eps=eps, sigma1=sigma1)
    covering = build_covering_data(arc, curve)
    graph = dual_graph(covering)
    target = make_g4(n, m, d)
    if not is_isomorphic(graph, target):
        raise ConsistencyError(
            f"engine output for (n={n}, m={m}, d={d}, eps={eps}, "
            f"sigma1={curve.sigma1}) is not isomorphic to G4({n}, {m}, {d})"
        )
    return RealizationWitness(
        arc=arc,
        curve=curve,
        covering=covering,
        graph=graph,
        target=FamilyTag("G4", (n, m, d)),
    )