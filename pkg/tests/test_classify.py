import math

import numpy as np
import pytest

from trigme import (Cut, InternalInvariantError, PureState, ValidationError,
                    basis_state, f_total, finest_factorization, ghz_state,
                    haar_random_pure, marginal_cuts, partial_trace,
                    product_cuts, tensor_product, w_state)
from trigme.classify import _refine_blocks
from trigme.selftest import permute_parties, random_biseparable

BELL = PureState((2, 2), np.array([1, 0, 0, 1]) / math.sqrt(2))


# -------------------------------------------------------- product_cuts

def test_ghz4_has_no_product_cuts():
    assert product_cuts(ghz_state(4)) == []


def test_single_factor_shows_up_as_product_cut():
    psi = tensor_product([basis_state((2,), (0,)), BELL])
    cuts = product_cuts(psi)
    assert [c.parties for c in cuts] == [(1,)]


def test_appendix_c_product_cuts(appendix_c_pure):
    cuts = product_cuts(appendix_c_pure, tol=1e-3)
    assert {c.parties for c in cuts} == {(1,), (2,), (1, 2)}


# ------------------------------------------------ finest_factorization

def test_ghz3_is_one_block():
    fact = finest_factorization(ghz_state(3))
    assert fact.factors == ((1, 2, 3),)
    assert fact.is_gme


def test_constructed_product_factors():
    psi = tensor_product([basis_state((2,), (0,)), basis_state((2,), (0,)),
                          BELL])
    fact = finest_factorization(psi)
    assert fact.factors == ((1,), (2,), (3, 4))
    assert not fact.is_gme


def test_appendix_c_factors(appendix_c_pure):
    fact = finest_factorization(appendix_c_pure, tol=1e-3)
    assert fact.factors == ((1,), (2,), (3, 4))
    assert not fact.is_gme


def test_interleaved_pairs_factor_correctly():
    pairs = tensor_product([BELL, BELL])
    psi = permute_parties(pairs, [1, 3, 2, 4])
    fact = finest_factorization(psi)
    assert fact.factors == ((1, 3), (2, 4))


def test_idempotence_on_reassembled_state(appendix_c_pure):
    fact = finest_factorization(appendix_c_pure, tol=1e-3)
    # rebuild from factor marginals: each factor is pure here, so take
    # dominant eigenvectors and tensor them back in party order
    parts = []
    for block in fact.factors:
        rho = partial_trace(appendix_c_pure, block)
        vals, vecs = np.linalg.eigh(rho.entries)
        parts.append(PureState(rho.dims,
                               vecs[:, -1] / np.linalg.norm(vecs[:, -1])))
    rebuilt = tensor_product(parts)
    assert finest_factorization(rebuilt).factors == fact.factors


def test_refinement_is_order_independent():
    rng = np.random.default_rng(5)
    cuts = [(1,), (2,), (1, 2)]
    expected = None
    for _ in range(6):
        order = list(rng.permutation(len(cuts)))
        blocks = [(1, 2, 3, 4)]
        for idx in order:
            blocks = _refine_blocks(blocks, cuts[idx])
        expected = expected or blocks
        assert blocks == expected == [(1,), (2,), (3, 4)]


def test_consistency_with_f_total_zero_inventory():
    suite = [ghz_state(4), haar_random_pure([2] * 4, 9)]
    suite += [random_biseparable(4, seed) for seed in range(10)]
    for psi in suite:
        fact = finest_factorization(psi)
        rep = f_total(psi)
        assert fact.is_gme == (not rep.zero_triangles)
        assert fact.is_gme == (rep.value > 0.0)


# ------------------------------------------------------- marginal cuts

def test_weakly_entangled_cut_is_flagged_marginal():
    eps = 1.5e-6  # concurrence ~ 2*eps lands between tol and 10*tol
    amps = np.array([1.0, 0.0, 0.0, eps])
    amps = amps / np.linalg.norm(amps)
    psi = tensor_product([PureState((2, 2), amps), basis_state((2,), (0,))])
    flagged = marginal_cuts(psi, tol=1e-6)
    assert Cut.of((1,), 3) in flagged
    assert Cut.of((1,), 3) not in product_cuts(psi, tol=1e-6)


# ------------------------------------------------------------- errors

def test_party_cap():
    with pytest.raises(ValidationError, match="capped"):
        product_cuts(haar_random_pure([2] * 11, 0))


def test_absurd_tolerance_raises_inconsistent_factorization():
    # every GHZ cut falls below a threshold of 2, so the refinement
    # splits into singletons, which cannot reconstruct the state
    with pytest.raises(InternalInvariantError,
                       match="inconsistent factorization"):
        finest_factorization(ghz_state(3), tol=2.0)


def test_needs_two_parties():
    with pytest.raises(ValidationError):
        finest_factorization(basis_state((2,), (0,)))


def test_w_state_is_gme_at_default_tolerance():
    fact = finest_factorization(w_state(4))
    assert fact.is_gme
