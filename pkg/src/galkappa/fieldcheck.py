"""Two-component and multispinor claims: covariance, conservation, redundancy.

Bilinears in the two-component field are reduced on shell (the dependent
component and all time derivatives eliminated) before testing identities,
so every verdict is an exact statement about the independent component.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .errors import (
    BadRank,
    BadSpin,
    CovarianceFailure,
    GalkappaError,
    RedundancyClaimFailure,
)
from .exactscalar import I, ONE, ZERO, PolyExpr, Scalar, SymbolRegistry, parse_scalar
from .galrealize import make_registry
from .matspin import MatExpr, SymBasis, embed_factor, gamma_projector, restrict_symmetric
from .weylop import DiffOp, ScalarDiffOp, bracket, compose, conjugate_phase, conjugate_shift

_HALF = Scalar(Fraction(1, 2))
_NEG_I = Scalar(0, -1)

PHI = "phi"
CHI = "chi"

# term key: (dagger component, dagger derivative index, plain component, plain index)
TermKey = Tuple[str, Tuple[int, int, int], str, Tuple[int, int, int]]


def _check_spin(s: int) -> int:
    if s not in (1, -1):
        raise BadSpin(f"spin label must be +1 or -1, got {s!r}")
    return s


class FieldPoly:
    """Bilinear expression: sum of coeff * (d^a comp)^dagger * (d^b comp)."""

    __slots__ = ("registry", "_terms")

    def __init__(self, registry: SymbolRegistry, terms: Dict[TermKey, PolyExpr]):
        self.registry = registry
        clean: Dict[TermKey, PolyExpr] = {}
        for key, coeff in terms.items():
            dc, dm, kc, km = key
            if dc not in (PHI, CHI) or kc not in (PHI, CHI):
                raise ValueError(f"unknown field component in {key}")
            if coeff.is_zero:
                continue
            clean[(dc, tuple(dm), kc, tuple(km))] = coeff
        self._terms = clean

    @staticmethod
    def zero(registry: SymbolRegistry) -> "FieldPoly":
        return FieldPoly(registry, {})

    @staticmethod
    def term(registry, coeff: PolyExpr, dag_comp, dag_midx, ket_comp, ket_midx) -> "FieldPoly":
        return FieldPoly(registry, {(dag_comp, tuple(dag_midx), ket_comp, tuple(ket_midx)): coeff})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self):
        return sorted(self._terms.items())

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        if self.registry != other.registry:
            raise GalkappaError("field expressions over different registries")
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            acc = terms.get(key, self.registry.zero()) + coeff
            if acc.is_zero:
                terms.pop(key, None)
            else:
                terms[key] = acc
        return FieldPoly(self.registry, terms)

    def __neg__(self) -> "FieldPoly":
        return FieldPoly(self.registry, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "FieldPoly") -> "FieldPoly":
        return self + (-other)

    def scale(self, factor) -> "FieldPoly":
        if not isinstance(factor, PolyExpr):
            factor = self.registry.const(Scalar.of(factor))
        return FieldPoly(self.registry, {k: factor * c for k, c in self._terms.items()})

    def derivative(self, axis: int) -> "FieldPoly":
        """Total coordinate derivative via the Leibniz rule (axis 0,1 space, 2 time)."""
        coord = ("x1", "x2", "t")[axis]
        out: Dict[TermKey, PolyExpr] = {}

        def bump(key, coeff):
            acc = out.get(key, self.registry.zero()) + coeff
            if acc.is_zero:
                out.pop(key, None)
            else:
                out[key] = acc

        for (dc, dm, kc, km), coeff in self._terms.items():
            dcoeff = coeff.diff(coord)
            if not dcoeff.is_zero:
                bump((dc, dm, kc, km), dcoeff)
            dm_up = tuple(a + (1 if i == axis else 0) for i, a in enumerate(dm))
            bump((dc, dm_up, kc, km), coeff)
            km_up = tuple(a + (1 if i == axis else 0) for i, a in enumerate(km))
            bump((dc, dm, kc, km_up), coeff)
        return FieldPoly(self.registry, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldPoly)
            and self.registry == other.registry
            and self._terms == other._terms
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        chunks = []
        for (dc, dm, kc, km), coeff in self.items():
            ctext = str(coeff)
            if " " in ctext:
                ctext = f"({ctext})"
            chunks.append(f"{ctext}*{dc}_dag{list(dm)}*{kc}{list(km)}")
        return " + ".join(chunks)

    def __repr__(self):
        return f"FieldPoly({self})"


class EomRules:
    """On-shell rewrite rules for the two-component field at spin label s."""

    def __init__(self, registry: SymbolRegistry, s: int):
        self.registry = registry
        self.s = _check_spin(s)
        half_i_over_m = (registry.const(I) * _HALF).div_symbol("m")
        half_s_over_m = (registry.const(Scalar(Fraction(s, 2)))).div_symbol("m")
        self.chi_d1 = half_i_over_m          # chi -> (i/2m) d1 phi ...
        self.chi_d2 = -half_s_over_m         # ... + (-s/2m) d2 phi
        self.chidag_d1 = -half_i_over_m      # conjugates
        self.chidag_d2 = -half_s_over_m
        self.dt = half_i_over_m              # dt phi -> (i/2m) laplacian phi
        self.dtdag = -half_i_over_m


def reduce_on_shell(f: FieldPoly, rules: EomRules) -> FieldPoly:
    """Eliminate the dependent component and all time derivatives; exact fixpoint.

    Each rewrite strictly removes a dependent-component factor or lowers the
    time-derivative count, so the loop terminates with a unique normal form.
    """
    reg = f.registry
    work = list(f._terms.items())
    out: Dict[TermKey, PolyExpr] = {}
    while work:
        (dc, dm, kc, km), coeff = work.pop()
        if kc == CHI:
            e1 = (km[0] + 1, km[1], km[2])
            e2 = (km[0], km[1] + 1, km[2])
            work.append(((dc, dm, PHI, e1), coeff * rules.chi_d1))
            work.append(((dc, dm, PHI, e2), coeff * rules.chi_d2))
            continue
        if dc == CHI:
            e1 = (dm[0] + 1, dm[1], dm[2])
            e2 = (dm[0], dm[1] + 1, dm[2])
            work.append(((PHI, e1, kc, km), coeff * rules.chidag_d1))
            work.append(((PHI, e2, kc, km), coeff * rules.chidag_d2))
            continue
        if km[2] > 0:
            down = (km[0], km[1], km[2] - 1)
            work.append(((dc, dm, kc, (down[0] + 2, down[1], down[2])), coeff * rules.dt))
            work.append(((dc, dm, kc, (down[0], down[1] + 2, down[2])), coeff * rules.dt))
            continue
        if dm[2] > 0:
            down = (dm[0], dm[1], dm[2] - 1)
            work.append((((PHI), (down[0] + 2, down[1], down[2]), kc, km), coeff * rules.dtdag))
            work.append((((PHI), (down[0], down[1] + 2, down[2]), kc, km), coeff * rules.dtdag))
            continue
        key = (dc, dm, kc, km)
        acc = out.get(key, reg.zero()) + coeff
        if acc.is_zero:
            out.pop(key, None)
        else:
            out[key] = acc
    return FieldPoly(reg, out)


# -- conservation law ---------------------------------------------------------


def _matrix_value(name: str, j: Optional[int], s: int) -> List[List[Scalar]]:
    i = I
    if name == "sigma_j":
        if j == 1:
            return [[ZERO, ONE], [ONE, ZERO]]
        if j == 2:
            si = Scalar.of(s)
            return [[ZERO, -i * si], [i * si, ZERO]]
        raise ValueError("sigma_j needs a flux index")
    if name == "gamma":
        return [[ONE, ZERO], [ZERO, ZERO]]
    if name == "one_plus_sigma3":
        return [[Scalar.of(2), ZERO], [ZERO, ZERO]]
    raise ValueError(f"unknown matrix name {name!r}")


_EPS = {(1, 2): 1, (2, 1): -1, (1, 1): 0, (2, 2): 0}


def _term_bilinear(reg, term: dict, i: int, j: Optional[int], s: int) -> FieldPoly:
    coeff = parse_scalar(term["coeff"])
    coeff = coeff * Scalar.of(s ** term.get("spin_power", 0))
    if term.get("eps"):
        if j is None:
            raise ValueError("eps factor outside a flux term")
        coeff = coeff * Scalar.of(_EPS[(i, j)])
    if coeff.is_zero:
        return FieldPoly.zero(reg)
    poly = reg.const(coeff)
    for factor in term.get("factors", ()):
        name = {"x_i": f"x{i}"}.get(factor, factor)
        poly = poly * reg.symbol(name)
    matrix = _matrix_value(term["matrix"], j, s)
    grad = term.get("grad")
    e_i = tuple(1 if axis == i - 1 else 0 for axis in range(3))
    zero_idx = (0, 0, 0)
    comps = (PHI, CHI)
    out = FieldPoly.zero(reg)
    for a in range(2):
        for b in range(2):
            if matrix[a][b].is_zero:
                continue
            dag_midx = e_i if grad == "dagger" else zero_idx
            ket_midx = e_i if grad == "field" else zero_idx
            out = out + FieldPoly.term(
                reg, poly * matrix[a][b], comps[a], dag_midx, comps[b], ket_midx
            )
    return out


def load_current_terms(variant: str = "corrected") -> dict:
    fname = {
        "corrected": "boost_current.json",
        "literal": "boost_current_literal.json",
    }.get(variant)
    if fname is None:
        raise ValueError(f"unknown conservation variant {variant!r}")
    payload = resources.files("galkappa.data").joinpath(fname).read_text()
    return json.loads(payload)


def check_conservation(
    i: int,
    s: int,
    variant: str = "corrected",
    drop: Optional[Tuple[str, int]] = None,
    registry: Optional[SymbolRegistry] = None,
) -> FieldPoly:
    """Residual of div(flux) + d/dt(density) after on-shell reduction.

    A zero result is the conservation law; `drop` deletes one transcribed
    term (section, index) to confirm the check is sensitive.
    """
    if i not in (1, 2):
        raise ValueError("free index must be 1 or 2")
    s = _check_spin(s)
    reg = registry or make_registry()
    data = load_current_terms(variant)
    flux_terms = list(data["terms"]["flux"])
    density_terms = list(data["terms"]["density"])
    if drop is not None:
        section, idx = drop
        target = {"flux": flux_terms, "density": density_terms}[section]
        del target[idx]

    expr = FieldPoly.zero(reg)
    for j in (1, 2):
        flux = FieldPoly.zero(reg)
        for term in flux_terms:
            flux = flux + _term_bilinear(reg, term, i, j, s)
        expr = expr + flux.derivative(j - 1)
    density = FieldPoly.zero(reg)
    for term in density_terms:
        density = density + _term_bilinear(reg, term, i, None, s)
    expr = expr + density.derivative(2)

    return reduce_on_shell(expr, EomRules(reg, s))


# -- covariance ----------------------------------------------------------------


def build_wave_operator(registry: Optional[SymbolRegistry] = None, s: int = 1) -> DiffOp:
    """Two-component first-order wave operator for spin label s."""
    reg = registry or make_registry()
    s = _check_spin(s)
    E = ScalarDiffOp.deriv(reg, (0, 0, 1), reg.const(I))
    p_minus = ScalarDiffOp(
        reg, {(1, 0, 0): reg.const(_NEG_I), (0, 1, 0): reg.const(Scalar.of(-s))}
    )
    p_plus = ScalarDiffOp(
        reg, {(1, 0, 0): reg.const(_NEG_I), (0, 1, 0): reg.const(Scalar.of(s))}
    )
    two_m = ScalarDiffOp.coeff(reg.symbol("m") * Scalar.of(2))
    return DiffOp(reg, [[E, p_minus], [p_plus, two_m]])


def _boost_pieces(reg, s: int, v, vplus_sign: int):
    vx, vy = v
    i = reg.const(I)
    vplus = vx + i * reg.const(Scalar.of(s * vplus_sign)) * vy
    half_vp = vplus * _HALF
    S = DiffOp(
        reg,
        [
            [ScalarDiffOp.coeff(reg.const(ONE)), ScalarDiffOp.zero(reg)],
            [ScalarDiffOp.coeff(-half_vp), ScalarDiffOp.coeff(reg.const(ONE))],
        ],
    )
    S_inv = DiffOp(
        reg,
        [
            [ScalarDiffOp.coeff(reg.const(ONE)), ScalarDiffOp.zero(reg)],
            [ScalarDiffOp.coeff(half_vp), ScalarDiffOp.coeff(reg.const(ONE))],
        ],
    )
    return S, S_inv


def boost_transform(
    G: DiffOp,
    s: int,
    v: Tuple[PolyExpr, PolyExpr],
    shift_sign: int = -1,
    vplus_sign: int = 1,
) -> DiffOp:
    """Finite boost action on the wave operator under one convention choice."""
    reg = G.registry
    vx, vy = v
    theta = reg.symbol("m") * (vx * reg.symbol("x1") + vy * reg.symbol("x2")) + (
        reg.symbol("m") * (vx * vx + vy * vy) * _HALF * reg.symbol("t")
    )
    if shift_sign == -1:
        shifted = conjugate_shift(G, (-vx, -vy))
    else:
        shifted = conjugate_shift(G, (vx, vy))
    core = conjugate_phase(shifted, theta)
    S, S_inv = _boost_pieces(reg, s, (vx, vy), vplus_sign)
    return compose(S_inv, compose(core, S))


_FIRST_ORDER = {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}


def solve_constant_matrix(lhs: DiffOp, G: DiffOp, s: int) -> List[List[PolyExpr]]:
    """Solve lhs = Lambda * G for a constant 2x2 matrix over the parameters.

    Works entrywise by matching derivative coefficients against the known
    first-order structure of G; raises CovarianceFailure when the system is
    inconsistent or the solution is not coordinate-free.
    """
    reg = lhs.registry
    neg_i = reg.const(_NEG_I)
    i_const = reg.const(I)
    s_inv = Scalar(Fraction(1, s))  # s in {1,-1} so 1/s == s
    lam: List[List[PolyExpr]] = [[None, None], [None, None]]
    for r in range(2):
        T0, T1 = lhs.entry(r, 0), lhs.entry(r, 1)
        for T in (T0, T1):
            for midx, _ in T.items():
                if midx not in _FIRST_ORDER:
                    raise CovarianceFailure(
                        f"transformed operator has an order-{sum(midx)} term"
                    )
        # column 0: Lambda_r0 * E + Lambda_r1 * p_plus
        l_r0 = T0.coefficient((0, 0, 1)) * _NEG_I
        l_r1 = T0.coefficient((1, 0, 0)) * I
        if not (T0.coefficient((0, 1, 0)) - l_r1 * Scalar.of(s)).is_zero:
            raise CovarianceFailure("inconsistent spatial coefficients in column 0")
        if not T0.coefficient((0, 0, 0)).is_zero:
            raise CovarianceFailure("stray multiplication term in column 0")
        # column 1: Lambda_r0 * p_minus + Lambda_r1 * 2m
        if not T1.coefficient((0, 0, 1)).is_zero:
            raise CovarianceFailure("stray time derivative in column 1")
        alt_r0 = T1.coefficient((1, 0, 0)) * I
        if not (alt_r0 - l_r0).is_zero:
            raise CovarianceFailure("row solution differs between columns")
        if not (T1.coefficient((0, 1, 0)) + l_r0 * Scalar.of(s)).is_zero:
            raise CovarianceFailure("inconsistent spatial coefficients in column 1")
        alt_r1 = (T1.coefficient((0, 0, 0)) * _HALF).div_symbol("m")
        if not (alt_r1 - l_r1).is_zero:
            raise CovarianceFailure("row solution differs between columns")
        for entry in (l_r0, l_r1):
            if entry.uses_symbols(("x1", "x2", "t")):
                raise CovarianceFailure("solution is not coordinate-free")
        lam[r][0], lam[r][1] = l_r0, l_r1
    # exact verification of the full matrix identity
    lam_op = DiffOp(reg, [[ScalarDiffOp.coeff(e) for e in row] for row in lam])
    if not (lhs - compose(lam_op, G)).is_zero:
        raise CovarianceFailure("residual after solving is nonzero")
    return lam


@dataclass
class BoostCovariance:
    s: int
    lam: List[List[PolyExpr]]
    shift_sign: int
    vplus_sign: int

    def lam_at_zero(self) -> List[List[Scalar]]:
        reg = self.lam[0][0].registry
        zero = reg.zero()
        out = []
        for row in self.lam:
            out.append([
                e.subs({"v1": zero, "v2": zero}).constant_term() for e in row
            ])
        return out

    def to_dict(self):
        return {
            "spin": self.s,
            "matrix": [[str(e) for e in row] for row in self.lam],
            "convention": {
                "shift_sign": self.shift_sign,
                "vplus_sign": self.vplus_sign,
            },
        }


def check_boost_covariance(s: int, registry: Optional[SymbolRegistry] = None) -> BoostCovariance:
    """Find a constant matrix intertwining the boosted and original operators.

    The finite-transformation conventions (shift direction, imaginary-part
    sign in the matrix factor) are fixed by solvability: each candidate is
    tried in a deterministic order and the first consistent one is returned.
    """
    s = _check_spin(s)
    reg = registry or make_registry()
    G = build_wave_operator(reg, s)
    v = (reg.symbol("v1"), reg.symbol("v2"))
    failures = []
    for shift_sign, vplus_sign in ((-1, 1), (-1, -1), (1, 1), (1, -1)):
        try:
            moved = boost_transform(G, s, v, shift_sign, vplus_sign)
            lam = solve_constant_matrix(moved, G, s)
            return BoostCovariance(s, lam, shift_sign, vplus_sign)
        except CovarianceFailure as exc:
            failures.append(f"(shift {shift_sign:+d}, vplus {vplus_sign:+d}): {exc}")
    raise CovarianceFailure(
        "no convention admits a constant intertwining matrix; tried "
        + "; ".join(failures)
    )


@dataclass
class RotationCovariance:
    s: int
    lam: List[List[PolyExpr]]

    def to_dict(self):
        return {
            "spin": self.s,
            "matrix": [[str(e) for e in row] for row in self.lam],
        }


def rotation_generator(registry: SymbolRegistry, s: int, spin_sign: int = 1) -> DiffOp:
    """Two-component rotation generator: orbital part plus (s/2) sigma_3."""
    reg = registry
    x1, x2 = reg.symbol("x1"), reg.symbol("x2")
    orbital = ScalarDiffOp(reg, {(0, 1, 0): x1 * _NEG_I, (1, 0, 0): x2 * I})
    half_s = reg.const(Scalar(Fraction(spin_sign * s, 2)))
    upper = orbital + ScalarDiffOp.coeff(half_s)
    lower = orbital - ScalarDiffOp.coeff(half_s)
    z = ScalarDiffOp.zero(reg)
    return DiffOp(reg, [[upper, z], [z, lower]])


def check_rotation_covariance(
    s: int, registry: Optional[SymbolRegistry] = None, spin_sign: int = 1
) -> RotationCovariance:
    """Infinitesimal rotation covariance: [G, J] must equal Lambda_J * G."""
    s = _check_spin(s)
    reg = registry or make_registry()
    G = build_wave_operator(reg, s)
    J = rotation_generator(reg, s, spin_sign)
    lam = solve_constant_matrix(bracket(G, J), G, s)
    return RotationCovariance(s, lam)


# -- multispinor redundancy -----------------------------------------------------


MOMENTUM_SYMBOLS = ("E", "m", "p_minus", "p_plus")


def momentum_registry() -> SymbolRegistry:
    return SymbolRegistry(MOMENTUM_SYMBOLS, invertible={"m"})


def _poly_scalar_ratio(p: PolyExpr, q: PolyExpr) -> Optional[Scalar]:
    """If p == sigma * q for a scalar sigma (q nonzero), return sigma."""
    if q.is_zero:
        return None
    q_items = q.items()
    key0, c0 = q_items[0]
    p0 = p.coefficient(key0)
    sigma = p0 / c0
    if (p - q * sigma).is_zero:
        return sigma
    return None


@dataclass
class MultispinorReduction:
    rank: int
    s: int
    matrix: MatExpr
    row_scale: Scalar
    nullity: int

    def to_dict(self):
        return {
            "rank": self.rank,
            "spin": self.s,
            "matrix": [[str(e) for e in row] for row in self.matrix.rows],
            "row_scale": str(self.row_scale),
            "nullity": self.nullity,
        }


def multispinor_equations(N: int, s: int = 1) -> MultispinorReduction:
    """Restrict the averaged rank-N wave operator to the symmetric subspace.

    Confirms the reduced system consists of exactly the two first-order
    equations (top row exactly; second row up to one nonzero rational scale)
    with every remaining row zero, so N-1 symmetric components are
    unconstrained.
    """
    if not isinstance(N, int) or not 1 <= N <= 4:
        raise BadRank(f"rank must be an integer in 1..4, got {N!r}")
    s = _check_spin(s)
    reg = momentum_registry()
    E, m = reg.symbol("E"), reg.symbol("m")
    p_minus, p_plus = reg.symbol("p_minus"), reg.symbol("p_plus")
    G = MatExpr(reg, [[E, p_minus], [p_plus, m * Scalar.of(2)]])
    gamma = gamma_projector(reg)
    total = None
    for slot in range(1, N + 1):
        piece = embed_factor(G, slot, N, filler=gamma)
        total = piece if total is None else total + piece
    total = total * Scalar(Fraction(1, N))

    basis = SymBasis(N)
    reduced = restrict_symmetric(total, basis)

    n = N + 1
    zero = reg.zero()
    top_expected = [E, p_minus] + [zero] * (n - 2)
    for cidx in range(n):
        if not (reduced.rows[0][cidx] - top_expected[cidx]).is_zero:
            raise RedundancyClaimFailure(
                f"top row mismatch at column {cidx}: {reduced.rows[0][cidx]}"
            )
    second_reference = [p_plus, m * Scalar.of(2)] + [zero] * (n - 2)
    scale = _poly_scalar_ratio(reduced.rows[1][0], second_reference[0])
    if scale is None or scale.is_zero:
        raise RedundancyClaimFailure("second row is not a scaling of the mass row")
    for cidx in range(n):
        if not (reduced.rows[1][cidx] - second_reference[cidx] * scale).is_zero:
            raise RedundancyClaimFailure(
                f"second row mismatch at column {cidx}: {reduced.rows[1][cidx]}"
            )
    for ridx in range(2, n):
        for cidx in range(n):
            if not reduced.rows[ridx][cidx].is_zero:
                raise RedundancyClaimFailure(
                    f"unexpected constraint in row {ridx}, column {cidx}"
                )
    return MultispinorReduction(N, s, reduced, scale, nullity=n - 2)
