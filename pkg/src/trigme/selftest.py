"""Runnable property campaign behind the ``selftest`` CLI command.

Each check prints one PASS/FAIL line.  The campaign covers the
polygamy-inequality suites, LOCC-branch and edge monotonicity, local
unitary invariance, the 5-party level equivalence, witness gauge
invariance, and the golden values of the shipped fixtures.
"""

from __future__ import annotations

import math
import sys

import numpy as np

from .concurrence import all_cut_concurrences, check_polygamy, \
    wootters_concurrence
from .mixed import minimal_purification, witness
from .states import (LocalChannel, PureState, ghz_state, haar_random_pure,
                     haar_random_unitary, hermitian_eig, partial_trace,
                     random_local_channel, tensor_product,
                     apply_local_channel_branches, w_state)
from .stateio import fixture_path, parse_state_file
from .triangles import EdgeConvention, f_level, f_total, gme_value

__all__ = ["run_selftest", "CHECKS"]

BOTH = (EdgeConvention.CONCURRENCE, EdgeConvention.SQUARED)


def _scaled(n: int, quick: bool) -> int:
    return max(2, n // 10) if quick else n


def permute_parties(psi: PureState, order: list[int]) -> PureState:
    """Relabel parties so that new party k is old party order[k-1]."""
    perm0 = [p - 1 for p in order]
    t = psi.tensor().transpose(perm0)
    return PureState(tuple(psi.dims[i] for i in perm0), t.reshape(-1))


def random_biseparable(nparties: int, seed: int) -> PureState:
    """Haar factors on a random bipartition, randomly interleaved."""
    rng = np.random.default_rng(seed)
    size = int(rng.integers(1, nparties))
    order = list(rng.permutation(nparties) + 1)
    left = tensor_product([haar_random_pure([2] * size, seed * 2 + 1),
                           haar_random_pure([2] * (nparties - size),
                                            seed * 2 + 2)])
    inverse = list(np.argsort(order) + 1)
    return permute_parties(left, inverse)


def check_golden_pure(quick: bool) -> str:
    ghz4, w4 = ghz_state(4), w_state(4)
    expect = [
        (gme_value(ghz4, BOTH[0]), 1.0),
        (gme_value(ghz4, BOTH[1]), 1.0),
        (gme_value(w4, BOTH[0]), math.sqrt(2.0 / 3.0)),
        (gme_value(w4, BOTH[1]), (5.0 / 12.0) ** 0.25),
        (gme_value(ghz_state(3), BOTH[0]), 1.0),
        (gme_value(w_state(3), BOTH[0]), 8.0 / 9.0),
        (gme_value(ghz_state(6), BOTH[0]), 1.0),
    ]
    worst = max(abs(got - want) for got, want in expect)
    if worst > 1e-9:
        raise AssertionError(f"golden pure values deviate by {worst:.3e}")
    return f"7 values, max deviation {worst:.1e}"


def check_golden_fixtures(quick: bool) -> str:
    rho_c = parse_state_file(fixture_path("appendix_c.json"), tol=1e-3)
    vals, vecs = hermitian_eig(rho_c)
    if vals[1] > 1e-3:
        raise AssertionError(f"appendix_c second eigenvalue {vals[1]:.2e}")
    psi = PureState(rho_c.dims, vecs[:, 0] / np.linalg.norm(vecs[:, 0]))
    for conv in BOTH:
        rep = f_total(psi, conv)
        if rep.value != 0.0:
            raise AssertionError(f"appendix_c F_4 = {rep.value!r} != 0")
        flagged = {frozenset(z.vertex_labels) for z in rep.zero_triangles}
        for verts in (((1,), (3,), (2, 4)), ((2,), (4,), (1, 3))):
            if frozenset(verts) not in flagged:
                raise AssertionError(f"triangle {verts} not flagged zero")
    pair = wootters_concurrence(partial_trace(psi, (3, 4)))
    if abs(pair - 0.866) > 5e-3:
        raise AssertionError(f"appendix_c pair concurrence {pair:.4f}")

    rho_e = parse_state_file(fixture_path("appendix_e.json"))
    evals = hermitian_eig(rho_e)[0]
    if abs(evals[0] - 0.75) > 1e-3 or abs(evals[1] - 0.25) > 1e-3:
        raise AssertionError(f"appendix_e eigenvalues {evals[:2]}")
    for pair_labels in ((1, 2), (1, 3), (2, 3)):
        c = wootters_concurrence(partial_trace(rho_e, pair_labels))
        if abs(c - 0.5) > 5e-3:
            raise AssertionError(
                f"appendix_e pair {pair_labels} concurrence {c:.4f}")
    w = witness(rho_e, EdgeConvention.SQUARED)
    if abs(w.value - 0.8034) > 5e-3:
        raise AssertionError(f"appendix_e witness {w.value:.6f}")
    return f"witness {w.value:.4f} (squared), pair concurrences ok"


def check_theorem1(quick: bool) -> str:
    trials = _scaled(1000, quick)
    worst = math.inf
    for dims in ([2] * 3, [2] * 4, [2] * 5, [3] * 3):
        for k in range(trials):
            rep = check_polygamy(haar_random_pure(dims, 10_000 + k))
            worst = min(worst, rep.min_slack)
            if not rep.all_hold:
                raise AssertionError(
                    f"inequality violated at dims {dims}, trial {k}: "
                    f"min slack {rep.min_slack:.3e}")
    return f"{4 * trials} states, min slack {worst:.3e}"


def check_locc_monotonicity(quick: bool) -> str:
    trials = _scaled(200, quick)
    worst = math.inf
    for k in range(trials):
        n = 3 if k % 2 == 0 else 4
        psi = haar_random_pure([2] * n, 20_000 + k)
        party = k % n + 1
        ch = random_local_channel(party, 2, 2 + k % 3, 21_000 + k)
        branches = apply_local_channel_branches(psi, ch)
        for conv in BOTH:
            before = gme_value(psi, conv)
            after = math.fsum(p * gme_value(b, conv) for p, b in branches)
            worst = min(worst, before - after)
            if after > before + 1e-7:
                raise AssertionError(
                    f"branch average {after!r} exceeds {before!r} "
                    f"(trial {k}, {conv.value})")
    return f"{trials} channel pairs, min slack {worst:.3e}"


def check_edge_monotonicity(quick: bool) -> str:
    trials = _scaled(1000, quick)
    rng = np.random.default_rng(31_415)
    step = 1e-5
    worst = math.inf
    for _ in range(trials):
        # sample edges satisfying the squared polygamy constraints
        while True:
            e = rng.uniform(0.05, 1.0, size=3)
            sq = e ** 2
            if (sq[0] <= sq[1] + sq[2] and sq[1] <= sq[0] + sq[2]
                    and sq[2] <= sq[0] + sq[1]):
                break

        def g(a, b, c):
            q = 0.5 * (a + b + c)
            return q * (q - a) * (q - b) * (q - c)

        for i in range(3):
            hi = e.copy()
            lo = e.copy()
            hi[i] += step
            lo[i] -= step
            d = (g(*hi) - g(*lo)) / (2 * step)
            worst = min(worst, d)
            if d < -1e-9:
                raise AssertionError(f"dG/dedge = {d!r} at edges {e}")
    return f"{trials} samples, min derivative {worst:.3e}"


def check_lu_invariance(quick: bool) -> str:
    trials = _scaled(100, quick)
    worst = 0.0
    for k in range(trials):
        n = 3 + k % 3
        psi = haar_random_pure([2] * n, 40_000 + k)
        rng = np.random.default_rng(41_000 + k)
        party = k % n + 1
        u = haar_random_unitary(2, rng)
        rotated = apply_local_channel_branches(
            psi, LocalChannel(party, (u,)))[0][1]
        t0 = all_cut_concurrences(psi, n // 2)
        t1 = all_cut_concurrences(rotated, n // 2)
        dev = max(abs(t0.entries[c] - t1.entries[c]) for c in t0.entries)
        worst = max(worst, dev)
        if dev > 1e-9:
            raise AssertionError(f"cut table moved by {dev:.3e} under a "
                                 f"local unitary (trial {k})")
    return f"{trials} unitaries, max deviation {worst:.1e}"


def check_f5_equivalence(quick: bool) -> str:
    per_kind = _scaled(50, quick)
    states = [random_biseparable(5, 50_000 + k) for k in range(per_kind)]
    states += [haar_random_pure([2] * 5, 51_000 + k)
               for k in range(per_kind)]
    for idx, psi in enumerate(states):
        z1 = f_level(psi, 1) <= 1e-8
        z2 = f_level(psi, 2) <= 1e-8
        if z1 != z2:
            raise AssertionError(
                f"level-1 zero {z1} but level-2 zero {z2} (state {idx})")
    return f"{len(states)} states, levels agree on vanishing"


def check_witness_gauge(quick: bool) -> str:
    rho = partial_trace(w_state(4), (1, 2, 3))
    pur = minimal_purification(rho)
    worst = 0.0
    for conv in BOTH:
        base = f_total(pur.state, conv).value
        for k in range(20):
            rng = np.random.default_rng(60_000 + k)
            u = haar_random_unitary(pur.rank, rng)
            gauged = apply_local_channel_branches(
                pur.state, LocalChannel(pur.reference_party, (u,)))[0][1]
            dev = abs(f_total(gauged, conv).value - base)
            worst = max(worst, dev)
        # zero-padding the reference dimension
        block = pur.state.amplitudes.reshape(-1, pur.rank)
        padded = np.hstack([block, np.zeros((block.shape[0], 2))])
        padded_state = PureState(rho.dims + (pur.rank + 2,),
                                 padded.reshape(-1))
        worst = max(worst, abs(f_total(padded_state, conv).value - base))
    if worst >= 1e-8:
        raise AssertionError(f"witness moved by {worst:.3e} under a "
                             "reference-system gauge")
    return f"max deviation {worst:.1e} over 21 gauges x 2 conventions"


CHECKS = [
    ("golden-pure-values", check_golden_pure),
    ("golden-fixture-values", check_golden_fixtures),
    ("polygamy-inequalities", check_theorem1),
    ("locc-branch-monotonicity", check_locc_monotonicity),
    ("edge-monotonicity", check_edge_monotonicity),
    ("local-unitary-invariance", check_lu_invariance),
    ("five-party-level-equivalence", check_f5_equivalence),
    ("witness-gauge-invariance", check_witness_gauge),
]


def run_selftest(out=None, quick: bool = False) -> bool:
    """Run every check, print one line each, return True iff all pass."""
    out = out or sys.stdout
    ok = True
    for name, fn in CHECKS:
        try:
            detail = fn(quick)
        except AssertionError as exc:
            ok = False
            print(f"FAIL {name}: {exc}", file=out)
        else:
            print(f"PASS {name}: {detail}", file=out)
    return ok
