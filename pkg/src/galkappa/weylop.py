"""Differential-operator algebra in the plane with an explicit time symbol.

Operators live in coordinates (x1, x2, t) with derivative directions
(d1, d2, dt).  The canonical normal form keeps every derivative to the right
of every coefficient; two operators are equal exactly when their normal
forms coincide.  Composition uses the generalized Leibniz rule with exact
integer binomials.

Degree guards: coefficient polynomials may not exceed total coordinate
degree 8 and derivative monomials may not exceed order 6.  Everything needed
here stays far below both bounds, so hitting one indicates a runaway
computation rather than a legitimate workload.
"""

from __future__ import annotations

import math
from typing import Dict, Mapping, Sequence, Tuple

from .errors import BadParameter, DegreeOverflow, MalformedPhase, ShapeError
from .exactscalar import ONE, I, PolyExpr, Scalar, SymbolRegistry

COORDS = ("x1", "x2", "t")
MAX_COEFF_DEGREE = 8
MAX_DERIV_ORDER = 6

MultiIndex = Tuple[int, int, int]
ZERO_IDX: MultiIndex = (0, 0, 0)


class ScalarDiffOp:
    """One scalar operator: sum of coefficient * d1^a1 d2^a2 dt^at terms."""

    __slots__ = ("registry", "_terms")

    def __init__(self, registry: SymbolRegistry, terms: Mapping[MultiIndex, PolyExpr]):
        for c in COORDS:
            if c not in registry:
                raise ValueError(f"registry lacks coordinate symbol {c!r}")
        self.registry = registry
        clean: Dict[MultiIndex, PolyExpr] = {}
        for midx, coeff in terms.items():
            midx = tuple(midx)
            if len(midx) != 3 or any(a < 0 for a in midx):
                raise ValueError(f"bad derivative multi-index {midx}")
            if coeff.is_zero:
                continue
            if sum(midx) > MAX_DERIV_ORDER:
                raise DegreeOverflow(f"derivative order {sum(midx)} exceeds guard")
            if coeff.max_degree(COORDS) > MAX_COEFF_DEGREE:
                raise DegreeOverflow("coefficient coordinate degree exceeds guard")
            clean[midx] = coeff
        self._terms = clean

    # -- constructors --------------------------------------------------------

    @staticmethod
    def coeff(poly: PolyExpr) -> "ScalarDiffOp":
        return ScalarDiffOp(poly.registry, {ZERO_IDX: poly})

    @staticmethod
    def deriv(registry: SymbolRegistry, midx: MultiIndex, coeff=None) -> "ScalarDiffOp":
        c = coeff if coeff is not None else registry.const(ONE)
        return ScalarDiffOp(registry, {tuple(midx): c})

    @staticmethod
    def zero(registry: SymbolRegistry) -> "ScalarDiffOp":
        return ScalarDiffOp(registry, {})

    # -- inspection ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def coefficient(self, midx: MultiIndex) -> PolyExpr:
        return self._terms.get(tuple(midx), self.registry.zero())

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other: "ScalarDiffOp"):
        if self.registry != other.registry:
            raise ShapeError("operators over different registries")

    def __add__(self, other: "ScalarDiffOp") -> "ScalarDiffOp":
        self._check(other)
        terms = dict(self._terms)
        for midx, coeff in other._terms.items():
            acc = terms.get(midx, self.registry.zero()) + coeff
            if acc.is_zero:
                terms.pop(midx, None)
            else:
                terms[midx] = acc
        return ScalarDiffOp(self.registry, terms)

    def __neg__(self) -> "ScalarDiffOp":
        return ScalarDiffOp(self.registry, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "ScalarDiffOp") -> "ScalarDiffOp":
        return self + (-other)

    def scale(self, factor) -> "ScalarDiffOp":
        """Left-multiply by a polynomial or scalar (commutes as a coefficient)."""
        if not isinstance(factor, PolyExpr):
            factor = self.registry.const(Scalar.of(factor))
        return ScalarDiffOp(
            self.registry, {m: factor * c for m, c in self._terms.items()}
        )

    def compose(self, other: "ScalarDiffOp") -> "ScalarDiffOp":
        """Normal-form product: derivatives act through coefficients (Leibniz)."""
        self._check(other)
        reg = self.registry
        terms: Dict[MultiIndex, PolyExpr] = {}
        for alpha, f in self._terms.items():
            for beta, g in other._terms.items():
                for g1 in range(alpha[0] + 1):
                    for g2 in range(alpha[1] + 1):
                        for gt in range(alpha[2] + 1):
                            dg = g
                            for _ in range(g1):
                                dg = dg.diff("x1")
                            for _ in range(g2):
                                dg = dg.diff("x2")
                            for _ in range(gt):
                                dg = dg.diff("t")
                            if dg.is_zero:
                                continue
                            w = (
                                math.comb(alpha[0], g1)
                                * math.comb(alpha[1], g2)
                                * math.comb(alpha[2], gt)
                            )
                            midx = (
                                alpha[0] - g1 + beta[0],
                                alpha[1] - g2 + beta[1],
                                alpha[2] - gt + beta[2],
                            )
                            piece = f * dg * Scalar.of(w)
                            acc = terms.get(midx, reg.zero()) + piece
                            if acc.is_zero:
                                terms.pop(midx, None)
                            else:
                                terms[midx] = acc
        return ScalarDiffOp(reg, terms)

    def bracket(self, other: "ScalarDiffOp") -> "ScalarDiffOp":
        return self.compose(other) - other.compose(self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ScalarDiffOp)
            and self.registry == other.registry
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.registry, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        chunks = []
        for midx, coeff in self.items():
            ds = []
            for name, power in zip(("d1", "d2", "dt"), midx):
                if power == 1:
                    ds.append(name)
                elif power > 1:
                    ds.append(f"{name}^{power}")
            ctext = str(coeff)
            if ds and ctext == "1":
                body = "*".join(ds)
            elif ds and ctext == "-1":
                body = "-" + "*".join(ds)
            else:
                if " " in ctext:
                    ctext = f"({ctext})"
                body = "*".join([ctext] + ds)
            chunks.append(body)
        return " + ".join(chunks).replace("+ -", "- ")

    def __repr__(self):
        return f"ScalarDiffOp({self})"


class DiffOp:
    """Square matrix of scalar operators; the home of every generator."""

    __slots__ = ("registry", "rows")

    def __init__(self, registry: SymbolRegistry, rows: Sequence[Sequence[ScalarDiffOp]]):
        self.registry = registry
        dim = len(rows)
        for row in rows:
            if len(row) != dim:
                raise ShapeError("operator matrix must be square")
            for e in row:
                if e.registry != registry:
                    raise ShapeError("entry registry mismatch")
        self.rows: Tuple[Tuple[ScalarDiffOp, ...], ...] = tuple(
            tuple(row) for row in rows
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    @staticmethod
    def scalar(op: ScalarDiffOp) -> "DiffOp":
        return DiffOp(op.registry, [[op]])

    @staticmethod
    def identity(registry: SymbolRegistry, dim: int, factor=None) -> "DiffOp":
        one = factor if factor is not None else registry.const(ONE)
        z = ScalarDiffOp.zero(registry)
        return DiffOp(
            registry,
            [
                [ScalarDiffOp.coeff(one) if r == c else z for c in range(dim)]
                for r in range(dim)
            ],
        )

    @staticmethod
    def zeros(registry: SymbolRegistry, dim: int) -> "DiffOp":
        z = ScalarDiffOp.zero(registry)
        return DiffOp(registry, [[z] * dim for _ in range(dim)])

    @staticmethod
    def from_matrix(mat) -> "DiffOp":
        """Lift a constant MatExpr to a multiplication operator."""
        return DiffOp(
            mat.registry,
            [[ScalarDiffOp.coeff(e) for e in row] for row in mat.rows],
        )

    def _check(self, other: "DiffOp"):
        if self.dim != other.dim or self.registry != other.registry:
            raise ShapeError("operator dimensions or registries do not match")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        return DiffOp(
            self.registry,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.registry, [[-e for e in row] for row in self.rows])

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, factor) -> "DiffOp":
        return DiffOp(self.registry, [[e.scale(factor) for e in row] for row in self.rows])

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.rows for e in row)

    def entry(self, r: int, c: int) -> ScalarDiffOp:
        return self.rows[r][c]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiffOp)
            and self.registry == other.registry
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.registry, self.rows))

    def __str__(self):
        return "[" + "; ".join(
            ", ".join(str(e) for e in row) for row in self.rows
        ) + "]"

    def __repr__(self):
        return f"DiffOp({self})"


def compose(A: DiffOp, B: DiffOp) -> DiffOp:
    A._check(B)
    n = A.dim
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            acc = ScalarDiffOp.zero(A.registry)
            for k in range(n):
                acc = acc + A.rows[r][k].compose(B.rows[k][c])
            row.append(acc)
        out.append(row)
    return DiffOp(A.registry, out)


def bracket(A: DiffOp, B: DiffOp) -> DiffOp:
    return compose(A, B) - compose(B, A)


def _as_phase_poly(theta) -> PolyExpr:
    if isinstance(theta, PolyExpr):
        return theta
    if isinstance(theta, ScalarDiffOp):
        for midx in theta._terms:
            if midx != ZERO_IDX:
                raise MalformedPhase("phase contains derivative terms")
        return theta.coefficient(ZERO_IDX)
    raise MalformedPhase(f"cannot interpret {theta!r} as a phase")


def _power_compose(base: ScalarDiffOp, n: int, unit: ScalarDiffOp) -> ScalarDiffOp:
    out = unit
    for _ in range(n):
        out = out.compose(base)
    return out


def _map_terms(A: DiffOp, d_ops: Sequence[ScalarDiffOp], coeff_map) -> DiffOp:
    """Rebuild A with each coefficient mapped and each dK replaced by d_ops[K]."""
    reg = A.registry
    unit = ScalarDiffOp.coeff(reg.const(ONE))
    out_rows = []
    for row in A.rows:
        out_row = []
        for entry in row:
            acc = ScalarDiffOp.zero(reg)
            for midx, coeff in entry._terms.items():
                piece = ScalarDiffOp.coeff(coeff_map(coeff))
                for axis in range(3):
                    if midx[axis]:
                        piece = piece.compose(
                            _power_compose(d_ops[axis], midx[axis], unit)
                        )
                acc = acc + piece
            out_row.append(acc)
        out_rows.append(out_row)
    return DiffOp(reg, out_rows)


def conjugate_phase(A: DiffOp, theta) -> DiffOp:
    """Conjugation by a polynomial phase: dJ -> dJ + i*(dJ theta).

    Exact because the phase is polynomial, so the adjoint series terminates.
    Multiplication operators are untouched.
    """
    poly = _as_phase_poly(theta)
    if poly.registry != A.registry:
        raise ShapeError("phase registry mismatch")
    reg = A.registry
    grads = [poly.diff(c) for c in COORDS]
    d_ops = [
        ScalarDiffOp(
            reg,
            {
                tuple(1 if k == axis else 0 for k in range(3)): reg.const(ONE),
                ZERO_IDX: I * grads[axis],
            },
        )
        for axis in range(3)
    ]
    return _map_terms(A, d_ops, lambda c: c)


def conjugate_shift(A: DiffOp, v) -> DiffOp:
    """Conjugation by the moving-frame substitution x -> x + v t.

    Closed-form rules: x_i -> x_i + v_i t (in coefficients), d_i -> d_i,
    dt -> dt + v1 d1 + v2 d2.  The velocity components must be free of the
    coordinates for these rules to be consistent.
    """
    vx, vy = v
    reg = A.registry
    for comp in (vx, vy):
        if not isinstance(comp, PolyExpr) or comp.registry != reg:
            raise ShapeError("shift velocity must be PolyExpr over the same registry")
        if comp.uses_symbols(COORDS):
            raise BadParameter("shift velocity must be coordinate-free")
    t = reg.symbol("t")
    subs_map = {
        "x1": reg.symbol("x1") + vx * t,
        "x2": reg.symbol("x2") + vy * t,
    }
    d1 = ScalarDiffOp.deriv(reg, (1, 0, 0))
    d2 = ScalarDiffOp.deriv(reg, (0, 1, 0))
    dt = ScalarDiffOp(
        reg,
        {(0, 0, 1): reg.const(ONE), (1, 0, 0): vx, (0, 1, 0): vy},
    )
    return _map_terms(A, [d1, d2, dt], lambda c: c.subs(subs_map))
