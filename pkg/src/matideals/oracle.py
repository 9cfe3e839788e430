"""Exhaustive left-ideal lattice of M_n(F_q), by brute force.

Nothing here looks at row spaces or echelon forms.  An ideal is the literal
set {XM : X in M_n(F_q)} of matrix codes, and the rank of an ideal is its
height in the inclusion lattice (the length of the longest chain down to
the zero ideal).  :func:`cross_check` then compares this picture with the
counting and canonical-form results from :mod:`matideals.ideals`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .gf import FieldSpec
from .matlin import Mat, batch_matmul, row_space_key
from . import ideals as th

DEFAULT_ORACLE_BOUND = 2 ** 20


class OracleBoundError(ValueError):
    pass


def _check_bound(n: int, F: FieldSpec, bound: int) -> int:
    size = F.q ** (n * n)
    if size > bound:
        raise OracleBoundError(
            f"M_{n}(F_{F.q}) has {size} elements, above the oracle bound {bound}")
    return size


def all_matrices(n: int, F: FieldSpec) -> np.ndarray:
    """Every matrix of M_n(F_q) as a stack (q^(n^2), n, n); index == code."""
    q, N = F.q, F.q ** (n * n)
    codes = np.arange(N, dtype=np.int64)
    digits = np.empty((N, n * n), dtype=np.int64)
    for pos in range(n * n - 1, -1, -1):
        codes, digits[:, pos] = np.divmod(codes, q)
    return digits.reshape(N, n, n)


def _codes(stack: np.ndarray, q: int) -> np.ndarray:
    flat = stack.reshape(len(stack), -1)
    weights = q ** np.arange(flat.shape[1] - 1, -1, -1, dtype=np.int64)
    return flat @ weights


def brute_left_ideal(M: Mat, bound: int = DEFAULT_ORACLE_BOUND) -> list[Mat]:
    """The set {XM}, sorted by code."""
    n, F = M.rows, M.field
    _check_bound(n, F, bound)
    codes = _left_ideal_codes(all_matrices(n, F), np.array(M.to_rows()), F)
    return [Mat.from_code(int(c), n, F) for c in codes]


def _left_ideal_codes(universe: np.ndarray, M: np.ndarray, F: FieldSpec) -> np.ndarray:
    prods = batch_matmul(universe, M[None], F)
    return np.unique(_codes(prods, F.q))


@dataclass
class OracleIdeal:
    members: tuple[int, ...]
    rank: int
    idempotent_members: tuple[int, ...]
    generator_idempotents: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "member_matrices": list(self.members),
            "rank": self.rank,
            "idempotent_members": list(self.idempotent_members),
            "generator_idempotents": list(self.generator_idempotents),
        }


@dataclass
class LatticeReport:
    n: int
    field: FieldSpec
    ideals: list[OracleIdeal]
    per_rank_ideal_counts: list[int]
    per_rank_matrix_counts: list[int]
    containment_edges: list[tuple[int, int]]
    # code -> index of the ideal it generates
    ideal_of_matrix: list[int] = field(repr=False, default_factory=list)

    @property
    def q(self) -> int:
        return self.field.q

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "field": self.field.to_json(),
            "ideals": [I.to_json() for I in self.ideals],
            "per_rank_ideal_counts": self.per_rank_ideal_counts,
            "per_rank_matrix_counts": self.per_rank_matrix_counts,
            "containment_edges": [list(e) for e in self.containment_edges],
        }


def brute_lattice(n: int, F: FieldSpec, bound: int = DEFAULT_ORACLE_BOUND) -> LatticeReport:
    N = _check_bound(n, F, bound)
    q = F.q
    universe = all_matrices(n, F)

    sets: dict[bytes, int] = {}
    member_lists: list[np.ndarray] = []
    gen_of = np.empty(N, dtype=np.int64)
    for code in range(N):
        members = _left_ideal_codes(universe, universe[code], F)
        h = members.tobytes()
        if h not in sets:
            sets[h] = len(member_lists)
            member_lists.append(members)
        gen_of[code] = sets[h]

    member_sets = [set(m.tolist()) for m in member_lists]
    for m, s in zip(member_lists, member_sets):
        sums = _codes(_add_all(universe[m], F), q)
        if not set(sums.tolist()) <= s:
            raise AssertionError("oracle ideal not closed under addition")

    # strict inclusions, then heights along them
    order = sorted(range(len(member_sets)), key=lambda i: len(member_sets[i]))
    below = {i: [j for j in order if j != i and member_sets[j] < member_sets[i]] for i in order}
    height: dict[int, int] = {}
    for i in order:
        height[i] = max((height[j] + 1 for j in below[i]), default=0)

    # deterministic numbering: by rank, then by sorted member codes
    perm = sorted(range(len(member_lists)), key=lambda i: (height[i], member_lists[i].tolist()))
    new_index = {old: new for new, old in enumerate(perm)}

    squares = _codes(batch_matmul(universe, universe, F), q)
    idem = np.nonzero(squares == np.arange(N))[0]

    ideals = []
    for old in perm:
        s = member_sets[old]
        idem_in = tuple(int(c) for c in idem if int(c) in s)
        gens = tuple(c for c in idem_in if gen_of[c] == old)
        ideals.append(OracleIdeal(tuple(member_lists[old].tolist()), height[old], idem_in, gens))

    edges = []
    for old in perm:
        lower = below[old]
        for j in lower:
            if not any(member_sets[j] < member_sets[m] for m in lower if m != j):
                edges.append((new_index[j], new_index[old]))
    edges.sort()

    top = max(height.values())
    per_rank_ideals = [0] * (top + 1)
    for I in ideals:
        per_rank_ideals[I.rank] += 1
    per_rank_matrices = [0] * (top + 1)
    for code in range(N):
        per_rank_matrices[height[int(gen_of[code])]] += 1

    return LatticeReport(n, F, ideals, per_rank_ideals, per_rank_matrices, edges,
                         [new_index[int(g)] for g in gen_of])


def _add_all(stack: np.ndarray, F: FieldSpec) -> np.ndarray:
    """All pairwise sums of a stack of matrices."""
    add = np.array(F.add_table, dtype=np.int64)
    return add[stack[:, None], stack[None, :]].reshape(-1, *stack.shape[1:])


def idempotent_census(report: LatticeReport) -> int:
    return sum(len(I.generator_idempotents) for I in report.ideals)


@dataclass
class Verdict:
    name: str
    passed: bool
    detail: str = ""
    counterexample: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}"
        if self.detail:
            text += f": {self.detail}"
        if self.counterexample:
            text += f" [counterexample: {self.counterexample}]"
        return text

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "counterexample": self.counterexample}


def _first_mismatch(name: str, got: list, want: list) -> Verdict:
    for k, (a, b) in enumerate(zip(got, want)):
        if a != b:
            return Verdict(name, False, f"oracle {got} vs theory {want}", f"rank {k}: {a} != {b}")
    if len(got) != len(want):
        return Verdict(name, False, f"oracle {got} vs theory {want}", "length differs")
    return Verdict(name, True, f"{got}")


def cross_check(report: LatticeReport) -> list[Verdict]:
    n, F, q = report.n, report.field, report.q
    ks = range(n + 1)
    out = []

    out.append(_first_mismatch("ideal counts per rank", report.per_rank_ideal_counts,
                               [th.gaussian_binomial(n, k, q) for k in ks]))

    bad = next((I for I in report.ideals if len(I.members) != q ** (I.rank * n)), None)
    out.append(Verdict("ideal sizes q^(kn)", bad is None, "",
                       None if bad is None else f"rank {bad.rank} ideal with {len(bad.members)} members"))

    bad = next((I for I in report.ideals
                if len(I.generator_idempotents) != th.count_idempotent_generators(n, I.rank, q)), None)
    out.append(Verdict("idempotent generators per ideal", bad is None, "",
                       None if bad is None else
                       f"rank {bad.rank} ideal has {len(bad.generator_idempotents)} generators"))

    out.append(_first_mismatch("rank census", report.per_rank_matrix_counts,
                               [th.count_rank_k_matrices(n, k, q) for k in ks]))

    # oracle rank (lattice height) vs echelon rank, and keys of each ideal
    keys = []
    mismatch = None
    for I in report.ideals:
        g = Mat.from_code(I.generator_idempotents[0], n, F) if I.generator_idempotents else \
            Mat.from_code(I.members[-1], n, F)
        key = row_space_key(g)
        keys.append(key)
        if key.dim != I.rank and mismatch is None:
            mismatch = f"generator {g} has rank {key.dim}, lattice height {I.rank}"
    out.append(Verdict("lattice height equals matrix rank", mismatch is None, "", mismatch))

    canon = {}
    for k in ks:
        for C in th.enumerate_canonical_idempotents(n, k, F):
            canon[row_space_key(C.matrix)] = C
    missing = [k for k in keys if k not in canon]
    extra = set(canon) - set(keys)
    ok = not missing and not extra and len(set(keys)) == len(keys)
    cex = None
    if missing:
        cex = f"oracle ideal with pivots {list(missing[0].pivot_cols)} has no canonical idempotent"
    elif extra:
        cex = f"canonical idempotent {canon[next(iter(extra))].matrix} matches no oracle ideal"
    out.append(Verdict("ideals match canonical family E(n,k)", ok, f"{len(keys)} ideals", cex))

    cex = None
    for I, key in zip(report.ideals, keys):
        if key not in canon:
            continue
        C = canon[key]
        if C.matrix.code not in I.generator_idempotents:
            cex = f"{C.matrix} is not a generator of its oracle ideal"
            break
        theory = tuple(M.code for M in th.idempotent_generators(C.matrix))
        if theory != I.generator_idempotents:
            cex = f"generator set of {C.matrix} differs from oracle census"
            break
    out.append(Verdict("generator sets match S+(I-S)MS", cex is None, "", cex))

    edges = set(report.containment_edges)
    cex = None
    for a in range(len(report.ideals)):
        for b in range(len(report.ideals)):
            if a == b:
                continue
            strict_sets = set(report.ideals[a].members) < set(report.ideals[b].members)
            strict_keys = keys[b].contains(keys[a]) and keys[a] != keys[b]
            if strict_sets != strict_keys:
                cex = f"ideals {a} and {b}: set inclusion {strict_sets}, subspace inclusion {strict_keys}"
                break
            covers = strict_keys and keys[b].dim == keys[a].dim + 1
            if covers != ((a, b) in edges):
                cex = f"ideals {a} and {b}: covering edge mismatch"
                break
        if cex:
            break
    out.append(Verdict("containment order matches subspace order", cex is None,
                       f"{len(edges)} covering edges", cex))
    return out


def dot_node_id(key) -> str:
    rows = "_".join("".join(str(x) for x in r) for r in key.basis())
    return "k{}_p{}{}".format(key.dim, "".join(str(c) for c in key.pivot_cols) or "0",
                              f"_r{rows}" if rows else "")


def to_dot(report: LatticeReport) -> str:
    """Hasse diagram of the ideal lattice in Graphviz DOT."""
    keys = []
    for I in report.ideals:
        code = I.generator_idempotents[0] if I.generator_idempotents else I.members[-1]
        keys.append(row_space_key(Mat.from_code(code, report.n, report.field)))
    lines = [f'digraph "left_ideals_M{report.n}_F{report.q}" {{', "  rankdir=BT;"]
    for I, key in zip(report.ideals, keys):
        label = f"rank {I.rank} / pivots {list(key.pivot_cols)}"
        lines.append(f'  {dot_node_id(key)} [label="{label}"];')
    for a, b in report.containment_edges:
        lines.append(f"  {dot_node_id(keys[a])} -> {dot_node_id(keys[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
