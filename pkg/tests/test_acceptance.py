"""Acceptance criteria.  All checks are exact; runtimes are asserted too.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary lists one
PASS/FAIL line per criterion.
"""

import io
import itertools
import time
from pathlib import Path

import pytest

from matideals.cli import run
from matideals.gf import field_from_order
from matideals.ideals import (
    check_equivalence_triple,
    canonical_family_blocks,
    count_canonical_recurrence,
    count_idempotent_generators,
    count_rank_k_matrices,
    enumerate_canonical_idempotents,
    enumerate_subspaces,
    gaussian_binomial,
    idempotent_generators,
    idempotent_generators_sweep,
    idempotents_same_ideal,
    same_right_ideal,
)
from matideals.matlin import Mat, batch_matmul, batch_rank, is_idempotent, mat_mul, row_space_key
from matideals.oracle import brute_lattice

from conftest import all_mats

FIXTURES = Path(__file__).parent / "fixtures"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.fixture(scope="module")
def lattices():
    out = {}
    for n, q in [(1, 2), (2, 2), (2, 3), (2, 4), (3, 2)]:
        with Timer() as t:
            out[n, q] = brute_lattice(n, field_from_order(q))
        out[n, q].elapsed = t.elapsed
    return out


@pytest.mark.criterion(1, "oracle ideal counts per rank equal Gaussian binomials")
def test_ideal_counts(lattices):
    small = 0.0
    for (n, q), report in lattices.items():
        assert report.per_rank_ideal_counts == [gaussian_binomial(n, k, q) for k in range(n + 1)]
        if (n, q) in [(2, 4), (3, 2)]:
            assert report.elapsed < 60
        else:
            small += report.elapsed
    assert small < 5


@pytest.mark.criterion(2, "|E(n,k)| = Gaussian binomial; members idempotent, rank k, pairwise inequivalent")
def test_canonical_family():
    with Timer() as t:
        for q in (2, 3, 4):
            F = field_from_order(q)
            for n in range(1, 7):
                for k in range(n + 1):
                    size = 0
                    for piv, stack in canonical_family_blocks(n, k, F):
                        assert (batch_matmul(stack, stack, F) == stack).all()
                        assert (batch_rank(stack, F) == k).all()
                        size += len(stack)
                    assert size == gaussian_binomial(n, k, q)
                    assert sum(1 for _ in enumerate_canonical_idempotents(n, k, F)) == size
        F = field_from_order(2)
        for n in range(1, 5):
            for k in range(n + 1):
                fam = [C.matrix for C in enumerate_canonical_idempotents(n, k, F)]
                for R, S in itertools.combinations(fam, 2):
                    assert not idempotents_same_ideal(R, S)
                    assert not idempotents_same_ideal(S, R)
    assert t.elapsed < 30


@pytest.mark.criterion(3, "each rank-k ideal has q^((n-k)k) idempotent generators")
def test_generator_counts(lattices):
    with Timer() as t:
        for q in (2, 3):
            F = field_from_order(q)
            for n in range(1, 4):
                for k in range(n + 1):
                    for C in enumerate_canonical_idempotents(n, k, F):
                        assert len(idempotent_generators(C.matrix)) == count_idempotent_generators(n, k, q)
        F = field_from_order(2)
        census = {I.generator_idempotents for I in lattices[2, 2].ideals}
        ours = set()
        for k in range(3):
            for C in enumerate_canonical_idempotents(2, k, F):
                gens = idempotent_generators(C.matrix)
                assert gens == idempotent_generators_sweep(C.matrix)
                ours.add(tuple(g.code for g in gens))
        assert ours == census
    assert t.elapsed < 10


@pytest.mark.criterion(4, "conditions (i), (ii), (iii) agree on all pairs in M_2(F_2), M_2(F_3)")
def test_equivalence_triple():
    with Timer() as t:
        for q in (2, 3):
            mats = list(all_mats(2, field_from_order(q)))
            agree = sum(1 for R, S in itertools.product(mats, repeat=2)
                        if len(set(check_equivalence_triple(R, S))) == 1)
            assert agree == len(mats) ** 2
    assert t.elapsed < 20


@pytest.mark.criterion(5, "rank census matches the closed form")
def test_rank_census(lattices):
    with Timer() as t:
        for n, q in [(2, 2), (2, 3), (3, 2)]:
            assert lattices[n, q].per_rank_matrix_counts == \
                [count_rank_k_matrices(n, k, q) for k in range(n + 1)]
        assert count_rank_k_matrices(2, 1, 2) == 9
        assert count_rank_k_matrices(3, 1, 2) == 49
        for n in range(1, 6):
            for q in (2, 3, 4):
                assert sum(count_rank_k_matrices(n, k, q) for k in range(n + 1)) == q ** (n * n)
    assert t.elapsed < 10


@pytest.mark.criterion(6, "S(n,k) recurrence equals the Gaussian binomial")
def test_recurrence_identity():
    with Timer() as t:
        for n in range(0, 13):
            for k in range(n + 1):
                for q in (2, 3, 4, 5):
                    assert count_canonical_recurrence(n, k, q) == gaussian_binomial(n, k, q)
    assert t.elapsed < 1


@pytest.mark.criterion(7, "same right ideal iff RS=S and SR=R for idempotents")
def test_duality():
    with Timer() as t:
        for q in (2, 3):
            idem = [M for M in all_mats(2, field_from_order(q)) if is_idempotent(M)]
            for R, S in itertools.product(idem, repeat=2):
                assert same_right_ideal(R, S) == (mat_mul(R, S) == S and mat_mul(S, R) == R)
    assert t.elapsed < 5


def _subspace_covers(keys):
    covers = set()
    for a, b in itertools.permutations(range(len(keys)), 2):
        if keys[b].contains(keys[a]) and keys[a] != keys[b]:
            between = any(c not in (a, b) and keys[c].contains(keys[a]) and keys[b].contains(keys[c])
                          and keys[c] not in (keys[a], keys[b]) for c in range(len(keys)))
            if not between:
                covers.add((a, b))
    return covers


@pytest.mark.criterion(8, "oracle containment order is isomorphic to subspace containment")
def test_lattice_structure(lattices):
    with Timer() as t:
        for n, q in [(2, 2), (3, 2)]:
            report = lattices[n, q]
            F = report.field
            keys = [row_space_key(Mat.from_code(I.generator_idempotents[0], n, F)) for I in report.ideals]
            every = [key for k in range(n + 1) for key in enumerate_subspaces(n, k, F)]
            assert sorted(map(repr, keys)) == sorted(map(repr, every))
            for a, b in itertools.permutations(range(len(keys)), 2):
                sets = set(report.ideals[a].members) < set(report.ideals[b].members)
                subs = keys[b].contains(keys[a]) and keys[a] != keys[b]
                assert sets == subs
            assert set(report.containment_edges) == _subspace_covers(keys)
    assert t.elapsed < 60


@pytest.mark.criterion(9, "CLI output is byte-identical to the committed fixtures")
@pytest.mark.parametrize("argv,fixture", [
    (["count", "--n", "2", "--q", "2"], "count_n2_q2.txt"),
    (["generators", "--n", "2", "--q", "2", "--mat", "1,0;0,0"], "generators_n2_q2_e11.txt"),
    (["lattice", "--n", "2", "--q", "2", "--format", "dot"], "lattice_n2_q2.dot"),
])
def test_cli_golden(argv, fixture):
    out = io.StringIO()
    assert run(argv, out=out) == 0
    assert out.getvalue().encode() == (FIXTURES / fixture).read_bytes()
