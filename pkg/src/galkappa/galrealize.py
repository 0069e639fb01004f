"""Free-field generator sets, the structure-relation table, and kappa extraction.

All realizations here act on the single independent field component, where
the Hamiltonian is the free quadratic operator.  Spin enters only through
the additive constant in the rotation generator; the boost generators carry
the explicit time symbol, and every bracket must hold identically in t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .cocycle import LieAlgebraSpec, jacobi_check
from .errors import BadMass, BadRank, BadSpin, GalkappaError, NotCentral
from .exactscalar import I, ONE, PolyExpr, Scalar, SymbolRegistry
from .weylop import DiffOp, ScalarDiffOp, bracket

GENERATOR_NAMES = ("P1", "P2", "H", "J", "K1", "K2", "M")
CENTRAL_NAME = "kappa"

REALIZE_SYMBOLS = ("c", "lam", "m", "t", "v1", "v2", "x1", "x2")

TABLE_CORRECTED = "corrected"
TABLE_LITERAL = "literal"

_HALF = Scalar(Fraction(1, 2))
_NEG_I = Scalar(0, Fraction(-1))


def make_registry() -> SymbolRegistry:
    """Symbol registry shared by all realizations; only the mass is invertible."""
    return SymbolRegistry(REALIZE_SYMBOLS, invertible={"m"})


class GeneratorSet:
    """Named generators (all the same dimension) plus model metadata."""

    def __init__(self, gens: Dict[str, DiffOp], meta: Dict):
        dims = {op.dim for op in gens.values()}
        if len(dims) != 1:
            raise GalkappaError("generators must share one dimension")
        self.gens = dict(gens)
        self.meta = dict(meta)

    def __getitem__(self, name: str) -> DiffOp:
        return self.gens[name]

    @property
    def registry(self) -> SymbolRegistry:
        return next(iter(self.gens.values())).registry

    @property
    def dim(self) -> int:
        return next(iter(self.gens.values())).dim

    def replaced(self, updates: Dict[str, DiffOp], meta_updates: Dict) -> "GeneratorSet":
        gens = dict(self.gens)
        gens.update(updates)
        meta = dict(self.meta)
        meta.update(meta_updates)
        return GeneratorSet(gens, meta)


def _coerce_param(registry: SymbolRegistry, value) -> PolyExpr:
    if isinstance(value, PolyExpr):
        if value.registry != registry:
            raise GalkappaError("parameter built over a different registry")
        return value
    return registry.const(Scalar.of(value))


def _base_generators(reg: SymbolRegistry) -> Dict[str, DiffOp]:
    x1, x2, t, m = (reg.symbol(n) for n in ("x1", "x2", "t", "m"))
    neg_i = reg.const(_NEG_I)
    P1 = DiffOp.scalar(ScalarDiffOp.deriv(reg, (1, 0, 0), neg_i))
    P2 = DiffOp.scalar(ScalarDiffOp.deriv(reg, (0, 1, 0), neg_i))
    half_inv_m = (reg.const(_HALF)).div_symbol("m")
    H = DiffOp.scalar(
        ScalarDiffOp(reg, {(2, 0, 0): -half_inv_m, (0, 2, 0): -half_inv_m})
    )
    J = DiffOp.scalar(
        ScalarDiffOp(reg, {(0, 1, 0): _NEG_I * x1, (1, 0, 0): I * x2})
    )
    it = reg.const(I) * t
    K1 = DiffOp.scalar(ScalarDiffOp(reg, {(0, 0, 0): m * x1, (1, 0, 0): it}))
    K2 = DiffOp.scalar(ScalarDiffOp(reg, {(0, 1, 0): it, (0, 0, 0): m * x2}))
    M = DiffOp.scalar(ScalarDiffOp.coeff(m))
    return {"P1": P1, "P2": P2, "H": H, "J": J, "K1": K1, "K2": K2, "M": M}


def _with_spin_constant(gens: Dict[str, DiffOp], reg, constant: Scalar) -> None:
    if constant.is_zero:
        return
    shift = DiffOp.identity(reg, 1, factor=reg.const(constant))
    gens["J"] = gens["J"] + shift


def _check_spin(s: int) -> int:
    if s not in (1, -1):
        raise BadSpin(f"spin label must be +1 or -1, got {s!r}")
    return s


def realize_schrodinger(registry: Optional[SymbolRegistry] = None) -> GeneratorSet:
    """Spinless one-component realization."""
    reg = registry or make_registry()
    gens = _base_generators(reg)
    return GeneratorSet(gens, {"model": "schrodinger", "s": None, "rank": None,
                               "lam": None, "shift": None})


def realize_levyleblond(registry: Optional[SymbolRegistry] = None, s: int = 1) -> GeneratorSet:
    """Spin-1/2 realization on the independent component: J gains s/2."""
    reg = registry or make_registry()
    s = _check_spin(s)
    gens = _base_generators(reg)
    _with_spin_constant(gens, reg, Scalar(Fraction(s, 2)))
    return GeneratorSet(gens, {"model": "levyleblond", "s": s, "rank": None,
                               "lam": None, "shift": None})


def realize_multispinor(registry: Optional[SymbolRegistry] = None, s: int = 1,
                        N: int = 1) -> GeneratorSet:
    """Rank-N symmetric multispinor reduction: J gains N*s/2."""
    reg = registry or make_registry()
    s = _check_spin(s)
    if not isinstance(N, int) or not 1 <= N <= 4:
        raise BadRank(f"rank must be an integer in 1..4, got {N!r}")
    gens = _base_generators(reg)
    _with_spin_constant(gens, reg, Scalar(Fraction(N * s, 2)))
    return GeneratorSet(gens, {"model": "multispinor", "s": s, "rank": N,
                               "lam": None, "shift": None})


def _require_mass_identity(g: GeneratorSet) -> None:
    reg = g.registry
    expected = DiffOp.identity(reg, g.dim, factor=reg.symbol("m"))
    if g["M"] != expected:
        raise BadMass("mass generator is not m times the identity")


def extend_lambda(g: GeneratorSet, lam) -> GeneratorSet:
    """Shift the rotation generator by a constant: J -> J + lam * Id."""
    _require_mass_identity(g)
    reg = g.registry
    lam = _coerce_param(reg, lam)
    if lam.uses_symbols(("x1", "x2", "t")):
        raise GalkappaError("lambda must be coordinate-free")
    J = g["J"] + DiffOp.identity(reg, g.dim, factor=lam)
    prev = g.meta.get("lam")
    total = lam if prev is None else prev + lam
    return g.replaced({"J": J}, {"lam": total})


def kappa_shift(g: GeneratorSet, c) -> GeneratorSet:
    """Redefine the boosts: K1 += (c/2m) P2, K2 -= (c/2m) P1."""
    _require_mass_identity(g)
    reg = g.registry
    c = _coerce_param(reg, c)
    if c.uses_symbols(("x1", "x2", "t")):
        raise GalkappaError("shift parameter must be coordinate-free")
    factor = (c * _HALF).div_symbol("m")
    K1 = g["K1"] + g["P2"].scale(factor)
    K2 = g["K2"] - g["P1"].scale(factor)
    prev = g.meta.get("shift")
    total = c if prev is None else prev + c
    return g.replaced({"K1": K1, "K2": K2}, {"shift": total})


def central_scalar(op: DiffOp) -> Optional[PolyExpr]:
    """If op == q*Id with q coordinate-free, return q; otherwise None."""
    reg = op.registry
    diag: Optional[PolyExpr] = None
    for r in range(op.dim):
        for c in range(op.dim):
            entry = op.entry(r, c)
            if r != c:
                if not entry.is_zero:
                    return None
                continue
            for midx, _coeff in entry.items():
                if midx != (0, 0, 0):
                    return None
            q = entry.coefficient((0, 0, 0))
            if diag is None:
                diag = q
            elif not (diag - q).is_zero:
                return None
    if diag is None:
        diag = reg.zero()
    if diag.uses_symbols(("x1", "x2", "t")):
        return None
    return diag


def extract_kappa(g: GeneratorSet) -> PolyExpr:
    """The second extension parameter, read off [K1, K2] = i * kappa * Id."""
    b = bracket(g["K1"], g["K2"])
    q = central_scalar(b)
    if q is None:
        raise NotCentral("[K1, K2] is not a constant multiple of the identity")
    return q * _NEG_I


@dataclass(frozen=True)
class TableRow:
    lhs: str
    rhs: str
    expected: Dict[str, Scalar]
    note: Optional[str] = None


class StructureTable:
    """Bracket table over the seven generator names plus the central kappa."""

    def __init__(self, name: str, rows: List[TableRow]):
        self.name = name
        self.rows = list(rows)
        seen = set()
        for row in self.rows:
            key = frozenset((row.lhs, row.rhs))
            if len(key) != 2 or key in seen:
                raise GalkappaError(f"bad or duplicate table pair ({row.lhs},{row.rhs})")
            seen.add(key)

    def to_liealgebra_spec(self) -> LieAlgebraSpec:
        names = GENERATOR_NAMES + (CENTRAL_NAME,)
        idx = {n: k for k, n in enumerate(names)}
        brackets = {}
        for row in self.rows:
            a, b = idx[row.lhs], idx[row.rhs]
            rhs = {idx[n]: coeff for n, coeff in row.expected.items()}
            if a < b:
                brackets[(a, b)] = rhs
            else:
                brackets[(b, a)] = {k: -v for k, v in rhs.items()}
        return LieAlgebraSpec(names, brackets)


def _table_rows(khp_nonzero: bool) -> List[TableRow]:
    i = I
    lit_note = (
        "literal variant pins this bracket to zero; every bundled realization "
        "produces the momentum row here"
    )
    rows = [
        TableRow("P1", "P2", {}),
        TableRow("P1", "H", {}),
        TableRow("P2", "H", {}),
        TableRow("J", "P1", {"P2": i}),
        TableRow("J", "P2", {"P1": -i}),
        TableRow("J", "H", {}),
        TableRow("J", "K1", {"K2": i}),
        TableRow("J", "K2", {"K1": -i}),
        TableRow("K1", "H", {"P1": i} if khp_nonzero else {},
                 None if khp_nonzero else lit_note),
        TableRow("K2", "H", {"P2": i} if khp_nonzero else {},
                 None if khp_nonzero else lit_note),
        TableRow("K1", "K2", {CENTRAL_NAME: i}),
        TableRow("K1", "P1", {"M": i}),
        TableRow("K1", "P2", {}),
        TableRow("K2", "P1", {}),
        TableRow("K2", "P2", {"M": i}),
        TableRow("P1", "M", {}),
        TableRow("P2", "M", {}),
        TableRow("H", "M", {}),
        TableRow("J", "M", {}),
        TableRow("K1", "M", {}),
        TableRow("K2", "M", {}),
    ]
    return rows


def default_table() -> StructureTable:
    """The bracket table with the boost-time rows carrying the momenta."""
    return StructureTable(TABLE_CORRECTED, _table_rows(khp_nonzero=True))


def literal_table() -> StructureTable:
    """Variant table with [K_i, H] = 0, kept for strict transcription checks."""
    return StructureTable(TABLE_LITERAL, _table_rows(khp_nonzero=False))


def get_table(variant: str) -> StructureTable:
    if variant == TABLE_CORRECTED:
        return default_table()
    if variant == TABLE_LITERAL:
        return literal_table()
    raise ValueError(f"unknown table variant {variant!r}")


@dataclass
class RowResult:
    lhs: str
    rhs: str
    computed: str
    expected: str
    residual: str
    passed: bool
    note: Optional[str] = None

    def to_dict(self):
        out = {
            "pair": f"[{self.lhs},{self.rhs}]",
            "computed": self.computed,
            "expected": self.expected,
            "residual": self.residual,
            "passed": self.passed,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class StructureReport:
    table: str
    rows: List[RowResult] = field(default_factory=list)
    kappa: Optional[PolyExpr] = None
    mass: Optional[PolyExpr] = None

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.rows)

    def failing_rows(self) -> List[RowResult]:
        return [r for r in self.rows if not r.passed]

    def to_dict(self):
        return {
            "table": self.table,
            "overall": self.overall,
            "kappa": None if self.kappa is None else str(self.kappa),
            "mass": None if self.mass is None else str(self.mass),
            "rows": [r.to_dict() for r in self.rows],
        }


def verify_structure(g: GeneratorSet, table: Optional[StructureTable] = None) -> StructureReport:
    """Check every table row against the realized generators.

    The table itself is validated as a Lie algebra first; a failing row in
    the report is a statement about the realization (or about the table
    variant), never a silently skipped check.
    """
    table = table or default_table()
    jac = jacobi_check(table.to_liealgebra_spec())
    if not jac.ok:
        raise GalkappaError(
            f"structure table is not a Lie algebra; cyclic identity fails at {jac.triple}"
        )
    reg = g.registry
    report = StructureReport(table=table.name)

    try:
        report.kappa = extract_kappa(g)
    except NotCentral:
        report.kappa = None

    mass_q = central_scalar(bracket(g["K1"], g["P1"]))
    report.mass = None if mass_q is None else mass_q * _NEG_I

    for row in table.rows:
        computed = bracket(g[row.lhs], g[row.rhs])
        note = row.note
        expected = DiffOp.zeros(reg, g.dim)
        ok_to_compare = True
        for name, coeff in row.expected.items():
            if name == CENTRAL_NAME:
                if report.kappa is None:
                    note = "bracket is not central; no kappa value exists"
                    ok_to_compare = False
                    break
                expected = expected + DiffOp.identity(
                    reg, g.dim, factor=reg.const(coeff) * report.kappa
                )
            else:
                expected = expected + g[name].scale(coeff)
        if not ok_to_compare:
            report.rows.append(
                RowResult(row.lhs, row.rhs, str(computed), "central multiple of Id",
                          str(computed), False, note)
            )
            continue
        residual = computed - expected
        report.rows.append(
            RowResult(
                row.lhs,
                row.rhs,
                str(computed),
                str(expected),
                str(residual),
                residual.is_zero,
                note,
            )
        )
    return report
