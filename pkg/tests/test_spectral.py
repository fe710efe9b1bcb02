import math

import numpy as np
import pytest

from golden import gauss_butcher
from hbvm.quadrature import QuadratureRule, gauss_rule, make_rule
from hbvm.smalllinalg import eigenvalues
from hbvm.spectral import (
    build_Xhat,
    build_Xs,
    build_Xtilde,
    isospectral_report,
    split_spectrum,
    subspace_residual,
)
from hbvm.tableau import HbvmTableau, build_hbvm


def test_Xs_small():
    assert build_Xs(1).tolist() == [[0.5]]
    xi = 1 / (2 * math.sqrt(3))
    np.testing.assert_allclose(build_Xs(2), [[0.5, -xi], [xi, 0.0]], atol=1e-17)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_Xs_has_gauss_spectrum(s):
    A, _, _ = gauss_butcher(s)
    np.testing.assert_allclose(eigenvalues(build_Xs(s)), eigenvalues(A), atol=1e-12)


def test_bordered_shapes():
    assert build_Xhat(3).shape == (4, 3)
    Xt = build_Xtilde(3)
    assert Xt.shape == (4, 4) and np.all(Xt[:, -1] == 0)


@pytest.mark.parametrize("k,s,kind", [(1, 1, "gauss"), (2, 2, "gauss"), (3, 3, "gauss"),
                                      (6, 2, "gauss"), (6, 2, "lobatto")])
def test_subspace_residual_examples(k, s, kind):
    assert subspace_residual(build_hbvm(k, s, kind)) <= 1e-13


def test_report_square_case():
    r = isospectral_report(build_hbvm(2, 2, "gauss"))
    assert r.matched
    assert r.zero_tail_max == 0.0


def test_report_with_silent_stages():
    r = isospectral_report(build_hbvm(5, 2, "gauss"))
    assert r.matched and r.gap_ok
    assert len(r.nonzero_eigs_A) == 2


def test_report_lobatto():
    t = build_hbvm(8, 3, "lobatto")
    assert subspace_residual(t) <= 1e-12
    assert isospectral_report(t).matched


@pytest.mark.parametrize("kind,k,s", [("gauss", k, s) for s in range(1, 5) for k in range(s, 13)]
                         + [("lobatto", k, s) for s in range(1, 5) for k in range(s + 1, 13)])
def test_isospectral_grid(kind, k, s):
    t = build_hbvm(k, s, kind)
    assert subspace_residual(t) <= 1e-12
    assert isospectral_report(t).matched


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_gauss_generator_in_right_half_plane(s):
    assert np.all(eigenvalues(build_Xs(s)).real > 0)


def test_corrupted_weights_break_isospectrality():
    g = gauss_rule(4)
    w = g.weights.copy()
    w[0] += 0.05
    w[-1] -= 0.05
    bad = QuadratureRule("gauss", g.nodes, w, 7)  # claims exactness it does not have
    t = build_hbvm(4, 2, bad)
    assert subspace_residual(t) > 1e-3
    assert not isospectral_report(t).matched


def test_split_spectrum():
    big, small, ratio = split_spectrum([1e-17, 0.5 + 0.1j, 0.5 - 0.1j, -1e-16], 2)
    assert np.allclose(big, [0.5 + 0.1j, 0.5 - 0.1j])
    assert len(small) == 2 and ratio > 1e4


def test_report_json():
    import json

    data = json.loads(isospectral_report(build_hbvm(6, 2, "gauss")).to_json())
    assert data["matched"] is True
    assert len(data["nonzero_eigs_A"]) == 2
    assert {"re", "im"} == set(data["eigs_Xs"][0])
