"""Floating-point commutator checks on the truncated mode space."""

import numpy as np
import pytest

from galkappa.errors import BadParameter, BadRank, BadSpin
from galkappa.galrealize import literal_table
from galkappa.numtrunc import (
    MODELS,
    build_numeric,
    low_mode_projector,
    residual_report,
    run_numeric_check,
    xp_defect,
)


def test_xp_defect_lives_at_the_cut():
    dim = 12
    d = xp_defect(dim)
    # the single genuine defect entry: -i * dim in the top mode
    assert abs(d[-1, -1] + 1j * dim) < 1e-9
    interior = d.copy()
    interior[-1, :] = 0.0
    interior[:, -1] = 0.0
    assert np.max(np.abs(interior)) < 1e-12


def test_boost_commutator_is_bitwise_zero():
    ops = build_numeric("schrodinger", n_max=10)
    comm = ops["K1"] @ ops["K2"] - ops["K2"] @ ops["K1"]
    assert np.all(comm == 0.0)


def test_acceptance_settings_pass_tightly():
    rep = run_numeric_check()  # n_max=24, low=8, m=1, t=0.5
    assert rep.overall
    assert max(r.residual for r in rep.rows) <= 1e-10
    pairs = {(r.lhs, r.rhs): r for r in rep.rows}
    assert pairs[("K1", "K2")].exact_zero
    assert len(rep.rows) == 21


def test_projector_removes_edge_contamination():
    # defects occupy entries with an index at the top mode, so any cutoff
    # strictly below the truncation strips them entirely
    rep = run_numeric_check(n_max=4, low=3)
    assert rep.overall
    assert max(r.residual for r in rep.rows) < 1e-12


def test_no_projection_exposes_the_edge():
    rep = run_numeric_check(n_max=8, low=8)
    assert not rep.overall
    failing = {(r.lhs, r.rhs) for r in rep.failing_rows()}
    # the canonical-pair rows are contaminated once the cut is visible
    assert ("K1", "P1") in failing
    assert ("K2", "P2") in failing


def test_literal_table_rows_fail_numerically():
    ops = build_numeric("schrodinger", n_max=12)
    rep = residual_report(ops, table=literal_table(), low_cutoff=6)
    failing = {(r.lhs, r.rhs) for r in rep.failing_rows()}
    assert failing == {("K1", "H"), ("K2", "H")}


@pytest.mark.parametrize("model", MODELS)
def test_models_share_projective_content(model):
    rep = run_numeric_check(model=model, n_max=8, low=4, rank=2)
    assert rep.overall


def test_internal_constant_shifts_rotation():
    base = build_numeric("schrodinger", n_max=6)
    half = build_numeric("levyleblond", n_max=6, spin_s=-1)
    multi = build_numeric("multispinor", n_max=6, spin_s=1, rank=3)
    eye = np.eye(base["J"].shape[0])
    assert np.allclose(half["J"] - base["J"], -0.5 * eye)
    assert np.allclose(multi["J"] - base["J"], 1.5 * eye)


def test_projector_shape_and_idempotence():
    proj = low_mode_projector(4, 1)
    assert proj.shape == (25, 25)
    assert np.allclose(proj @ proj, proj)
    assert np.isclose(np.trace(proj).real, 4.0)


def test_parameter_validation():
    with pytest.raises(BadParameter):
        build_numeric("heat-kernel")
    with pytest.raises(BadParameter):
        build_numeric("schrodinger", m=0.0)
    with pytest.raises(BadParameter):
        build_numeric("schrodinger", m=-2.0)
    with pytest.raises(BadParameter):
        build_numeric("schrodinger", n_max=3)
    with pytest.raises(BadSpin):
        build_numeric("levyleblond", spin_s=0)
    with pytest.raises(BadRank):
        build_numeric("multispinor", rank=9)
    with pytest.raises(BadParameter):
        low_mode_projector(8, 9)
    with pytest.raises(BadParameter):
        low_mode_projector(8, -1)


def test_report_serialization_shape():
    rep = run_numeric_check(n_max=6, low=3)
    payload = rep.to_dict()
    assert set(payload) == {
        "model", "mass", "time", "n_max", "low_cutoff", "tolerance",
        "overall", "rows",
    }
    assert payload["overall"] is True
    row = payload["rows"][0]
    assert set(row) == {"pair", "max_abs_residual", "exact_zero", "passed"}
