"""Homological actions on Z_k^n: invariance, cores, closures, quotients.

An Action holds one invertible matrix per named generator.  Invariance under
the generators and their inverses is equivalent to invariance under the whole
generated group, so cores and minimal invariant closures are fixed-point
iterations over the generator set alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .zkmod import (
    MatrixZk,
    ModuleVector,
    Modulus,
    ModulusMismatch,
    QuotientModule,
    RankMismatch,
    SubgroupBasis,
    ZkmodError,
    contains,
    span,
    subgroup_intersect,
    subgroup_sum,
    trivial_subgroup,
)

_MAX_FIXED_POINT_ITERATIONS = 10_000


class NotInvariant(ZkmodError):
    pass


class BudgetExceeded(ZkmodError):
    def __init__(self, candidates: int):
        super().__init__(f"enumeration would examine {candidates} candidates")
        self.candidates = candidates


def _parse_word(word) -> tuple:
    """Word over generator names: 'r.h.r^-1' or an iterable of (name, exp)."""
    if isinstance(word, str):
        letters = []
        for tok in word.split("."):
            tok = tok.strip()
            if not tok:
                continue
            if "^" in tok:
                name, _, exp = tok.partition("^")
                letters.append((name, int(exp)))
            else:
                letters.append((tok, 1))
        return tuple(letters)
    return tuple((name, int(exp)) for name, exp in word)


@dataclass(frozen=True)
class Action:
    """Named invertible matrices acting on Z_k^n, with a word evaluator."""

    modulus: Modulus
    rank: int
    names: tuple
    matrices: tuple
    inverses: tuple = field(default=())

    def __post_init__(self):
        if len(self.names) != len(self.matrices):
            raise ValueError("one matrix per generator name")
        for m in self.matrices:
            if m.modulus != self.modulus:
                raise ModulusMismatch("generator matrix modulus differs from action modulus")
            if m.nrows != self.rank or m.ncols != self.rank:
                raise RankMismatch("generator matrix is not rank x rank")
        if not self.inverses:
            object.__setattr__(self, "inverses", tuple(m.inverse() for m in self.matrices))

    @classmethod
    def from_matrices(cls, k: int, rank: int, named: Sequence) -> "Action":
        names = tuple(n for n, _ in named)
        mats = tuple(
            m if isinstance(m, MatrixZk) else MatrixZk(Modulus(k), tuple(map(tuple, m)))
            for _, m in named
        )
        return cls(Modulus(k), rank, names, mats)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def matrix(self, name: str) -> MatrixZk:
        return self.matrices[self.index_of(name)]

    def inverse_matrix(self, name: str) -> MatrixZk:
        return self.inverses[self.index_of(name)]

    def word_matrix(self, word) -> MatrixZk:
        """Evaluate a word over the generators; a monoid homomorphism."""
        out = MatrixZk.identity(self.modulus.k, self.rank)
        for name, exp in _parse_word(word):
            i = self.index_of(name)
            base = self.matrices[i] if exp > 0 else self.inverses[i]
            for _ in range(abs(exp)):
                out = out @ base
        return out

    def all_matrices(self) -> tuple:
        return self.matrices + self.inverses


def _image_rows(m: MatrixZk, s: SubgroupBasis) -> list:
    vecs = [m.apply(ModuleVector(s.modulus, r)).coords for r in s.rows]
    return vecs


def is_invariant(act: Action, s: SubgroupBasis) -> bool:
    """True iff every generator maps s onto itself (both directions checked)."""
    _check_compat(act, s)
    for m in act.all_matrices():
        for r in _image_rows(m, s):
            if any(r) and not contains(s, ModuleVector(s.modulus, r)):
                return False
    return True


def _check_compat(act: Action, s: SubgroupBasis):
    if act.modulus != s.modulus:
        raise ModulusMismatch(f"{act.modulus} vs {s.modulus}")
    if act.rank != s.rank:
        raise RankMismatch(f"{act.rank} vs {s.rank}")


def minimal_invariant_subgroup(act: Action, gens: Iterable[ModuleVector]) -> SubgroupBasis:
    """Smallest subgroup containing gens and stable under all generators.

    Fixed-point iteration: add images under every generator and inverse until
    the canonical form stops changing.  For k == 0 this terminates only when
    the matrices generate a finite group; runaway inputs are rejected.
    """
    gens = list(gens)
    for g in gens:
        if g.modulus != act.modulus:
            raise ModulusMismatch(f"{g.modulus} vs {act.modulus}")
        if g.rank != act.rank:
            raise RankMismatch(f"{g.rank} vs {act.rank}")
    cur = span(act.modulus.k, act.rank, [g.coords for g in gens])
    for _ in range(_MAX_FIXED_POINT_ITERATIONS):
        rows = list(cur.rows)
        for m in act.all_matrices():
            rows.extend(_image_rows(m, cur))
        nxt = span(act.modulus.k, act.rank, rows)
        if nxt.rows == cur.rows:
            return cur
        cur = nxt
    raise ZkmodError("invariant closure did not stabilize; is the matrix group finite?")


def core(act: Action, n1: SubgroupBasis) -> SubgroupBasis:
    """Largest subgroup of n1 stable under the action.

    Iterates N <- N intersect (A N) intersect (A^-1 N) over all generators; a
    descending chain, finite for k >= 2 and stabilizing for finite matrix
    groups when k == 0.
    """
    _check_compat(act, n1)
    cur = n1
    for _ in range(_MAX_FIXED_POINT_ITERATIONS):
        nxt = cur
        for m in act.all_matrices():
            image = span(act.modulus.k, act.rank, _image_rows(m, cur))
            nxt = subgroup_intersect(nxt, image)
        if nxt.rows == cur.rows:
            return cur
        cur = nxt
    raise ZkmodError("core iteration did not stabilize; is the matrix group finite?")


@dataclass(frozen=True)
class QuotientAction:
    """Induced generator maps on M_k/n, as integer matrices on quotient tuples."""

    quotient: QuotientModule
    names: tuple
    matrices: tuple
    inverses: tuple

    def apply(self, mat: Sequence[Sequence[int]], q: Sequence[int]) -> tuple:
        qmod = self.quotient
        size = len(qmod.invariants)
        out = [0] * size
        for j in range(size):
            out[j] = sum(q[i] * mat[i][j] for i in range(size))
        return qmod.reduce(out)

    def generator(self, name: str):
        return self.matrices[self.names.index(name)]

    def generator_inverse(self, name: str):
        return self.inverses[self.names.index(name)]


def _induced_matrix(act_matrix: MatrixZk, qmod: QuotientModule) -> tuple:
    """Matrix of the induced map on quotient tuples (q acts as a row vector)."""
    n = qmod.rank
    at = tuple(zip(*act_matrix.rows))
    # M = Vinv * A^T * V restricted to the kept coordinates
    vinv_at = [
        [sum(qmod.inverse_transform[i][t] * at[t][j] for t in range(n)) for j in range(n)]
        for i in range(n)
    ]
    full = [
        [sum(vinv_at[i][t] * qmod.transform[t][j] for t in range(n)) for j in range(n)]
        for i in range(n)
    ]
    out = []
    for i in qmod.kept:
        row = []
        for pos, j in enumerate(qmod.kept):
            d = qmod.invariants[pos]
            row.append(full[i][j] % d if d else full[i][j])
        out.append(tuple(row))
    return tuple(out)


def induced_quotient_action(act: Action, n: SubgroupBasis):
    """(QuotientModule, QuotientAction) for M_k/n; n must be invariant."""
    _check_compat(act, n)
    if not is_invariant(act, n):
        raise NotInvariant("subgroup is not invariant under the action")
    qmod = QuotientModule.from_subgroup(n)
    mats = tuple(_induced_matrix(m, qmod) for m in act.matrices)
    invs = tuple(_induced_matrix(m, qmod) for m in act.inverses)
    return qmod, QuotientAction(qmod, act.names, mats, invs)


@dataclass(frozen=True)
class EnumConstraints:
    """Search constraints for enumerate_invariant_subgroups."""

    quotient_invariants: Optional[tuple] = None
    contains_vectors: tuple = ()
    excludes_vectors: tuple = ()
    budget: int = 200_000


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _functionals(n: int, p: int):
    """Nonzero functionals Z_p^n -> Z_p up to scalar: leading coordinate 1."""
    for lead in range(n):
        tail_len = n - lead - 1
        idx = [0] * tail_len
        while True:
            yield (0,) * lead + (1,) + tuple(idx)
            pos = tail_len - 1
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] < p:
                    break
                idx[pos] = 0
                pos -= 1
            if pos < 0:
                break


def _functional_fixed(f: tuple, mats: Sequence[MatrixZk], p: int) -> bool:
    """ker(f) is invariant iff f composed with each generator is a scalar of f."""
    n = len(f)
    j0 = next(j for j in range(n) if f[j])
    inv_lead = pow(f[j0], p - 2, p) if p > 2 else f[j0]
    for m in mats:
        fa = tuple(sum(f[i] * m.rows[i][j] for i in range(n)) % p for j in range(n))
        c = (fa[j0] * inv_lead) % p
        if c == 0:
            return False
        if any((c * f[j] - fa[j]) % p for j in range(n)):
            return False
    return True


def _functional_kernel(f: tuple, k: int, p: int) -> SubgroupBasis:
    n = len(f)
    j0 = next(j for j in range(n) if f[j])
    inv_lead = pow(f[j0], p - 2, p) if p > 2 else f[j0]
    rows = [tuple(p if j == j0 else 0 for j in range(n))]
    for j in range(n):
        if j == j0:
            continue
        c = (f[j] * inv_lead) % p
        rows.append(tuple(1 if t == j else (-c) % k if t == j0 else 0 for t in range(n)))
    return span(k, n, rows)


def enumerate_invariant_subgroups(
    act: Action, constraints: EnumConstraints, workers: int = 1
) -> tuple:
    """All invariant subgroups meeting the constraints, lexicographically sorted.

    Prime-index constraints go through the hyperplane route: kernels of the
    (p^n - 1)/(p - 1) functionals up to scalar, filtered by the eigen-functional
    condition.  Anything else walks the lattice of invariant subgroups by
    closure extensions, subject to the budget.
    """
    k = act.modulus.k
    if k == 0:
        raise ZkmodError("enumeration requires a finite modulus")
    qinv = constraints.quotient_invariants
    if qinv is not None and len(qinv) == 1 and _is_prime(qinv[0]) and k % qinv[0] == 0:
        return _enumerate_prime_index(act, qinv[0], constraints, workers)
    return _enumerate_towers(act, constraints)


def _enumerate_prime_index(
    act: Action, p: int, constraints: EnumConstraints, workers: int
) -> tuple:
    n = act.rank
    k = act.modulus.k
    total = (p**n - 1) // (p - 1)
    if total > constraints.budget:
        raise BudgetExceeded(total)
    cands = list(_functionals(n, p))
    if workers > 1:
        survivors = _filter_parallel(act, p, cands, workers)
    else:
        survivors = [f for f in cands if _functional_fixed(f, act.matrices, p)]
    out = []
    contain_coords = [v.coords for v in constraints.contains_vectors]
    exclude_coords = [v.coords for v in constraints.excludes_vectors]
    for f in survivors:
        if any(sum(a * b for a, b in zip(f, v)) % p for v in contain_coords):
            continue
        if not all(sum(a * b for a, b in zip(f, v)) % p for v in exclude_coords):
            continue
        out.append(_functional_kernel(f, k, p))
    out.sort(key=lambda s: s.rows)
    return tuple(out)


def _filter_chunk(args):
    mat_rows, p, chunk = args
    mats = [MatrixZk(Modulus(p), rows) for rows in mat_rows]
    return [f for f in chunk if _functional_fixed(f, mats, p)]


def _filter_parallel(act: Action, p: int, cands: list, workers: int) -> list:
    from concurrent.futures import ProcessPoolExecutor

    mat_rows = [tuple(tuple(x % p for x in row) for row in m.rows) for m in act.matrices]
    chunksize = max(1, (len(cands) + workers - 1) // workers)
    chunks = [cands[i : i + chunksize] for i in range(0, len(cands), chunksize)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_filter_chunk, [(mat_rows, p, c) for c in chunks]))
    return [f for part in parts for f in part]


def _all_vectors(k: int, n: int):
    idx = [0] * n
    while True:
        yield tuple(idx)
        pos = n - 1
        while pos >= 0:
            idx[pos] += 1
            if idx[pos] < k:
                break
            idx[pos] = 0
            pos -= 1
        if pos < 0:
            return


def _enumerate_towers(act: Action, constraints: EnumConstraints) -> tuple:
    from .zkmod import quotient_invariants

    k = act.modulus.k
    n = act.rank
    base = minimal_invariant_subgroup(act, list(constraints.contains_vectors))
    seen = {base.rows: base}
    queue = [base]
    steps = 0
    while queue:
        cur = queue.pop()
        for v in _all_vectors(k, n):
            steps += 1
            if steps > constraints.budget:
                raise BudgetExceeded(steps)
            vec = ModuleVector(act.modulus, v)
            if contains(cur, vec):
                continue
            bigger = minimal_invariant_subgroup(
                act, [ModuleVector(act.modulus, r) for r in cur.rows] + [vec]
            )
            if bigger.rows not in seen:
                seen[bigger.rows] = bigger
                queue.append(bigger)
    out = []
    for s in seen.values():
        if constraints.quotient_invariants is not None:
            if quotient_invariants(s) != tuple(constraints.quotient_invariants):
                continue
        if any(contains(s, v) for v in constraints.excludes_vectors):
            continue
        out.append(s)
    out.sort(key=lambda s: s.rows)
    return tuple(out)
