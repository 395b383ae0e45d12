"""Exact linear algebra over Z_k (k >= 2) and Z (encoded as modulus 0).

Subgroups of Z_k^n are represented by canonical row bases: Howell normal
form over Z_k (the unique span-canonical echelon form over a ring with zero
divisors) and Hermite normal form over Z.  Equal row spans therefore compare
as bitwise-equal bases.  All values are immutable; every operation is a pure
function.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence


class ZkmodError(Exception):
    pass


class ModulusMismatch(ZkmodError):
    pass


class DimensionMismatch(ZkmodError):
    pass


class RankMismatch(ZkmodError):
    pass


class InfiniteOrder(ZkmodError):
    pass


class NotInvertible(ZkmodError):
    pass


@dataclass(frozen=True)
class Modulus:
    """Coefficient modulus: k >= 2 means Z_k, k == 0 means Z."""

    k: int

    def __post_init__(self):
        if self.k < 0 or self.k == 1:
            raise ValueError("modulus must be 0 (meaning Z) or an integer >= 2")

    @property
    def finite(self) -> bool:
        return self.k != 0

    def reduce(self, x: int) -> int:
        return x % self.k if self.k else int(x)


def _red_row(row: Sequence[int], k: int) -> tuple:
    if k:
        return tuple(x % k for x in row)
    return tuple(int(x) for x in row)


def _pivot_col(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def _xgcd(a: int, b: int):
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def _unit_lifting(a: int, k: int) -> int:
    """A unit u of Z_k with u*a == gcd(a, k) mod k (a in [1, k))."""
    g = gcd(a, k)
    a1, k1 = a // g, k // g
    u0 = pow(a1 % k1, -1, k1) if k1 > 1 else 1
    for t in range(g):
        u = (u0 + t * k1) % k
        if gcd(u, k) == 1:
            return u
    raise AssertionError("no lifting unit found")  # unreachable for valid input


def _echelon(rows: Iterable[Sequence[int]], ncols: int, k: int) -> list:
    """Row echelon with normalized pivots and reduced above-pivot entries.

    Over Z_k pivots are the canonical divisors of k; over Z (k == 0) pivots
    are positive.  Entries above a pivot p lie in [0, p).  Span-preserving:
    only unimodular 2x2 combinations, unit scalings and row swaps are used.
    """
    mat = [list(_red_row(r, k)) for r in rows]
    mat = [r for r in mat if any(r)]
    m = len(mat)
    pr = 0
    for col in range(ncols):
        if pr == m:
            break
        sel = next((i for i in range(pr, m) if mat[i][col]), None)
        if sel is None:
            continue
        mat[pr], mat[sel] = mat[sel], mat[pr]
        for i in range(pr + 1, m):
            b = mat[i][col]
            if not b:
                continue
            a = mat[pr][col]
            g, s, t = _xgcd(a, b)
            u, v = -(b // g), a // g
            rp, ri = mat[pr], mat[i]
            if k:
                mat[pr] = [(s * x + t * y) % k for x, y in zip(rp, ri)]
                mat[i] = [(u * x + v * y) % k for x, y in zip(rp, ri)]
            else:
                mat[pr] = [s * x + t * y for x, y in zip(rp, ri)]
                mat[i] = [u * x + v * y for x, y in zip(rp, ri)]
        a = mat[pr][col]
        if k:
            u = _unit_lifting(a, k)
            if u != 1:
                mat[pr] = [(u * x) % k for x in mat[pr]]
        elif a < 0:
            mat[pr] = [-x for x in mat[pr]]
        p = mat[pr][col]
        for i in range(pr):
            q = mat[i][col] // p
            if q:
                if k:
                    mat[i] = [(x - q * y) % k for x, y in zip(mat[i], mat[pr])]
                else:
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[pr])]
        pr += 1
    return [tuple(r) for r in mat[:pr]]


def canonical_rows(rows: Iterable[Sequence[int]], ncols: int, k: int) -> tuple:
    """Canonical basis of the row span: Howell form (k >= 2), Hermite (k == 0).

    Idempotent, and equal spans yield identical tuples.  The Howell pass
    saturates the echelon form with annihilator rows (k/p times each pivot
    row) until stable, which is what makes trailing-column extraction and
    membership reduction complete over Z_k.
    """
    cur = _echelon(rows, ncols, k)
    if k == 0:
        return tuple(cur)
    while True:
        extra = []
        for r in cur:
            p = r[_pivot_col(r)]
            if p > 1:
                mult = k // p
                er = tuple((mult * x) % k for x in r)
                if any(er):
                    extra.append(er)
        if not extra:
            return tuple(cur)
        nxt = _echelon(list(cur) + extra, ncols, k)
        if nxt == cur:
            return tuple(cur)
        cur = nxt


def reduce_vector(v: Sequence[int], rows: Sequence[Sequence[int]], k: int) -> tuple:
    """Remainder of v after greedy elimination against canonical rows."""
    w = list(_red_row(v, k))
    for r in rows:
        j = _pivot_col(r)
        x = w[j]
        if not x:
            continue
        q = x // r[j]
        if q:
            if k:
                w = [(a - q * b) % k for a, b in zip(w, r)]
            else:
                w = [a - q * b for a, b in zip(w, r)]
    return tuple(w)


@dataclass(frozen=True)
class ModuleVector:
    """Element of Z_k^n with canonical coordinates."""

    modulus: Modulus
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", _red_row(self.coords, self.modulus.k))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _compat(self, other: "ModuleVector"):
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"{self.modulus} vs {other.modulus}")
        if len(self.coords) != len(other.coords):
            raise RankMismatch(f"{len(self.coords)} vs {len(other.coords)}")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._compat(other)
        return ModuleVector(self.modulus, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        self._compat(other)
        return ModuleVector(self.modulus, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(self.modulus, tuple(-a for a in self.coords))

    def scale(self, c: int) -> "ModuleVector":
        return ModuleVector(self.modulus, tuple(c * a for a in self.coords))


def vector(k: int, coords: Sequence[int]) -> ModuleVector:
    return ModuleVector(Modulus(k), tuple(coords))


def unit_vector(k: int, rank: int, index: int) -> ModuleVector:
    return ModuleVector(Modulus(k), tuple(1 if j == index else 0 for j in range(rank)))


@dataclass(frozen=True)
class MatrixZk:
    """Dense integer matrix acting on column vectors, entries mod k."""

    modulus: Modulus
    rows: tuple

    def __post_init__(self):
        rows = tuple(_red_row(r, self.modulus.k) for r in self.rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix must have positive dimensions")
        if len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @classmethod
    def identity(cls, k: int, n: int) -> "MatrixZk":
        return cls(Modulus(k), tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def apply(self, v: ModuleVector) -> ModuleVector:
        if v.modulus != self.modulus:
            raise ModulusMismatch(f"{self.modulus} vs {v.modulus}")
        if v.rank != self.ncols:
            raise DimensionMismatch(f"matrix cols {self.ncols} vs vector rank {v.rank}")
        return ModuleVector(
            self.modulus, tuple(sum(a * x for a, x in zip(row, v.coords)) for row in self.rows)
        )

    def __matmul__(self, other: "MatrixZk") -> "MatrixZk":
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"{self.modulus} vs {other.modulus}")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.ncols} vs {other.nrows}")
        cols = list(zip(*other.rows))
        return MatrixZk(
            self.modulus,
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows),
        )

    def power(self, e: int) -> "MatrixZk":
        if e < 0:
            return self.inverse().power(-e)
        out = MatrixZk.identity(self.modulus.k, self.nrows)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def inverse(self) -> "MatrixZk":
        """Two-sided inverse over Z_k, or over Z when det is a unit (+-1)."""
        n = self.nrows
        if n != self.ncols:
            raise NotInvertible("not square")
        k = self.modulus.k
        aug = [tuple(self.rows[i]) + tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        red = _echelon(aug, 2 * n, k)
        ident = MatrixZk.identity(k, n).rows
        if len(red) != n or tuple(r[:n] for r in red) != ident:
            raise NotInvertible("matrix is singular over the coefficient ring")
        return MatrixZk(self.modulus, tuple(r[n:] for r in red))

    def is_invertible(self) -> bool:
        try:
            self.inverse()
            return True
        except NotInvertible:
            return False


@dataclass(frozen=True)
class SubgroupBasis:
    """Canonically-represented subgroup of Z_k^n (rows = Howell/Hermite basis)."""

    modulus: Modulus
    rank: int
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", canonical_rows(self.rows, self.rank, self.modulus.k))

    @property
    def num_generators(self) -> int:
        return len(self.rows)

    def vectors(self):
        return [ModuleVector(self.modulus, r) for r in self.rows]

    def is_trivial(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return self.rows == MatrixZk.identity(self.modulus.k, self.rank).rows


def span(k: int, rank: int, gens: Iterable[Sequence[int]]) -> SubgroupBasis:
    rows = [g.coords if isinstance(g, ModuleVector) else tuple(g) for g in gens]
    for r in rows:
        if len(r) != rank:
            raise RankMismatch(f"generator length {len(r)} vs rank {rank}")
    return SubgroupBasis(Modulus(k), rank, tuple(rows))


def full_module(k: int, rank: int) -> SubgroupBasis:
    return SubgroupBasis(Modulus(k), rank, MatrixZk.identity(k, rank).rows)


def trivial_subgroup(k: int, rank: int) -> SubgroupBasis:
    return SubgroupBasis(Modulus(k), rank, ())


def howell_form(m: MatrixZk) -> SubgroupBasis:
    """Canonical basis of the row span of m."""
    return SubgroupBasis(m.modulus, m.ncols, m.rows)


def _compat(s1: SubgroupBasis, s2: SubgroupBasis):
    if s1.modulus != s2.modulus:
        raise ModulusMismatch(f"{s1.modulus} vs {s2.modulus}")
    if s1.rank != s2.rank:
        raise RankMismatch(f"{s1.rank} vs {s2.rank}")


def subgroup_sum(s1: SubgroupBasis, s2: SubgroupBasis) -> SubgroupBasis:
    _compat(s1, s2)
    return SubgroupBasis(s1.modulus, s1.rank, s1.rows + s2.rows)


def subgroup_intersect(s1: SubgroupBasis, s2: SubgroupBasis) -> SubgroupBasis:
    """Zassenhaus: trailing halves of the canonical form of [[A,A],[B,0]]."""
    _compat(s1, s2)
    n = s1.rank
    k = s1.modulus.k
    stacked = [r + r for r in s1.rows] + [r + (0,) * n for r in s2.rows]
    red = canonical_rows(stacked, 2 * n, k)
    tails = [r[n:] for r in red if _pivot_col(r) >= n or _pivot_col(r) == -1]
    tails = [t for t in tails if any(t)]
    return SubgroupBasis(s1.modulus, n, tuple(tails))


def contains(s: SubgroupBasis, v: ModuleVector) -> bool:
    if s.modulus != v.modulus:
        raise ModulusMismatch(f"{s.modulus} vs {v.modulus}")
    if s.rank != v.rank:
        raise RankMismatch(f"{s.rank} vs {v.rank}")
    return not any(reduce_vector(v.coords, s.rows, s.modulus.k))


def subgroup_contains(s1: SubgroupBasis, s2: SubgroupBasis) -> bool:
    """True iff s2 is a subgroup of s1."""
    _compat(s1, s2)
    return all(not any(reduce_vector(r, s1.rows, s1.modulus.k)) for r in s2.rows)


def subgroup_order(s: SubgroupBasis) -> int:
    """|s| for finite modulus; the product of k/p over the pivot entries p."""
    k = s.modulus.k
    if k == 0:
        if s.is_trivial():
            return 1
        raise InfiniteOrder("subgroup of Z^n has infinite order")
    order = 1
    for r in s.rows:
        order *= k // r[_pivot_col(r)]
    return order


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> tuple:
    diag, _, _ = smith_with_transform(rows, ncols)
    return diag


def smith_with_transform(rows: Sequence[Sequence[int]], ncols: int):
    """(d, V, Vinv) with d the SNF diagonal of the integer matrix (length ncols,
    zeros for free columns) and V unimodular with rowspan(R) V = rowspan(diag(d)).
    Only column operations touch V, so x -> xV induces the quotient isomorphism
    Z^ncols / rowspan(R) ~ direct sum of Z_{d_j}."""
    A = [list(map(int, r)) for r in rows]
    if not A:
        A = [[0] * ncols]
    m = len(A)
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_cols(j1, j2):
        for r in A:
            r[j1], r[j2] = r[j2], r[j1]
        for r in V:
            r[j1], r[j2] = r[j2], r[j1]

    def add_col(dst, src, q):
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    t = 0
    limit = min(m, ncols)
    while t < limit:
        best = None
        for i in range(t, m):
            for j in range(t, ncols):
                x = A[i][j]
                if x and (best is None or abs(x) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        A[t], A[i0] = A[i0], A[t]
        if j0 != t:
            swap_cols(t, j0)
        while True:
            dirty = False
            for i in range(m):
                if i != t and A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        dirty = True
            for j in range(ncols):
                if j != t and A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        viol = None
        for i in range(t + 1, m):
            for j in range(t + 1, ncols):
                if A[i][j] % A[t][t]:
                    viol = i
                    break
            if viol is not None:
                break
        if viol is not None:
            A[t] = [x + y for x, y in zip(A[t], A[viol])]
            continue
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        t += 1
    diag = tuple(A[j][j] if j < t else 0 for j in range(ncols))
    Vinv = _integer_inverse(V)
    return diag, tuple(tuple(r) for r in V), Vinv


def _integer_inverse(M: Sequence[Sequence[int]]) -> tuple:
    n = len(M)
    aug = [tuple(M[i]) + tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    red = _echelon(aug, 2 * n, 0)
    if len(red) != n or any(red[i][:n] != tuple(1 if j == i else 0 for j in range(n)) for i in range(n)):
        raise NotInvertible("transform is not unimodular")
    return tuple(r[n:] for r in red)


def quotient_invariants(s: SubgroupBasis) -> tuple:
    """Invariant factors of M_k / s, in divisibility order, 1s dropped.

    A 0 entry stands for a free Z factor (only possible when k == 0).
    """
    k = s.modulus.k
    n = s.rank
    rel = [list(r) for r in s.rows]
    if k:
        rel += [[k if j == i else 0 for j in range(n)] for i in range(n)]
    diag = smith_normal_form(rel, n)
    return tuple(d for d in diag if d != 1)


def relative_quotient_invariants(outer: SubgroupBasis, inner: SubgroupBasis) -> tuple:
    """Invariant factors of outer/inner (inner must be contained in outer), k >= 2."""
    _compat(outer, inner)
    k = outer.modulus.k
    if k == 0:
        raise InfiniteOrder("relative quotients implemented for finite modulus only")
    if not subgroup_contains(outer, inner):
        raise ZkmodError("inner subgroup is not contained in outer")
    n = outer.rank
    lattice = canonical_rows(
        list(outer.rows) + [[k if j == i else 0 for j in range(n)] for i in range(n)], n, 0
    )
    rels = [_coords_in_lattice(r, lattice) for r in inner.rows]
    rels += [_coords_in_lattice([k if j == i else 0 for j in range(n)], lattice) for i in range(n)]
    diag = smith_normal_form(rels, len(lattice))
    return tuple(d for d in diag if d != 1)


def _coords_in_lattice(v: Sequence[int], hnf_rows: Sequence[Sequence[int]]) -> list:
    """Coordinates of v in the Z-basis given by full-rank Hermite rows."""
    w = list(map(int, v))
    coords = [0] * len(hnf_rows)
    for idx, r in enumerate(hnf_rows):
        j = _pivot_col(r)
        if w[j] % r[j]:
            raise ZkmodError("vector not in lattice")
        q = w[j] // r[j]
        coords[idx] = q
        if q:
            w = [a - q * b for a, b in zip(w, r)]
    if any(w):
        raise ZkmodError("vector not in lattice")
    return coords


@dataclass(frozen=True)
class SolutionSet:
    """Particular solution plus kernel basis: the full set is x + ker(a)."""

    particular: ModuleVector
    kernel: SubgroupBasis


def solve_linear(a: MatrixZk, b: ModuleVector) -> Optional[SolutionSet]:
    """Solve a x = b; None when no solution exists.

    Works over the augmented rows (column_i(a) | e_i): their span consists of
    all pairs (a c, c), and the Howell property makes both the image-membership
    reduction and the trailing kernel extraction complete.
    """
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"{a.modulus} vs {b.modulus}")
    if a.nrows != b.rank:
        raise DimensionMismatch(f"matrix rows {a.nrows} vs vector rank {b.rank}")
    k = a.modulus.k
    m, n = a.nrows, a.ncols
    cols = list(zip(*a.rows))
    aug = [tuple(cols[i]) + tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    red = canonical_rows(aug, m + n, k)
    w = list(b.coords) + [0] * n
    for r in red:
        j = _pivot_col(r)
        if j >= m:
            break
        x = w[j]
        if not x:
            continue
        q = x // r[j]
        if q:
            if k:
                w = [(p - q * y) % k for p, y in zip(w, r)]
            else:
                w = [p - q * y for p, y in zip(w, r)]
    if any(w[:m]):
        return None
    particular = ModuleVector(a.modulus, tuple(-x for x in w[m:]))
    kernel_rows = [r[m:] for r in red if _pivot_col(r) >= m]
    kernel = SubgroupBasis(a.modulus, n, tuple(kernel_rows))
    assert a.apply(particular).coords == b.coords
    return SolutionSet(particular, kernel)


def column_space(a: MatrixZk) -> SubgroupBasis:
    """The image {a x} as a subgroup of Z_k^nrows."""
    return SubgroupBasis(a.modulus, a.nrows, tuple(zip(*a.rows)))


@dataclass(frozen=True)
class QuotientModule:
    """M_k / s as an explicit product of cyclic groups.

    invariants lists the cyclic orders (each >= 2, or 0 for a free factor);
    project/lift translate between ambient coordinates and quotient tuples
    through the Smith transform of the relation matrix.
    """

    modulus: Modulus
    rank: int
    invariants: tuple
    transform: tuple
    inverse_transform: tuple
    kept: tuple

    @classmethod
    def from_subgroup(cls, s: SubgroupBasis) -> "QuotientModule":
        k = s.modulus.k
        n = s.rank
        rel = [list(r) for r in s.rows]
        if k:
            rel += [[k if j == i else 0 for j in range(n)] for i in range(n)]
        diag, V, Vinv = smith_with_transform(rel, n)
        kept = tuple(j for j, d in enumerate(diag) if d != 1)
        invariants = tuple(diag[j] for j in kept)
        return cls(s.modulus, n, invariants, V, Vinv, kept)

    @property
    def size(self) -> int:
        order = 1
        for d in self.invariants:
            if d == 0:
                raise InfiniteOrder("quotient has a free factor")
            order *= d
        return order

    def zero(self) -> tuple:
        return (0,) * len(self.invariants)

    def project(self, coords: Sequence[int]) -> tuple:
        if len(coords) != self.rank:
            raise RankMismatch(f"{len(coords)} vs {self.rank}")
        full = [sum(coords[i] * self.transform[i][j] for i in range(self.rank)) for j in self.kept]
        return tuple(x % d if d else x for x, d in zip(full, self.invariants))

    def project_vector(self, v: ModuleVector) -> tuple:
        if v.modulus != self.modulus:
            raise ModulusMismatch(f"{v.modulus} vs {self.modulus}")
        return self.project(v.coords)

    def lift(self, q: Sequence[int]) -> ModuleVector:
        full = [0] * self.rank
        for x, j in zip(q, self.kept):
            full[j] = x
        coords = tuple(
            sum(full[i] * self.inverse_transform[i][j] for i in range(self.rank))
            for j in range(self.rank)
        )
        return ModuleVector(self.modulus, coords)

    def add(self, q1: Sequence[int], q2: Sequence[int]) -> tuple:
        return tuple(
            (a + b) % d if d else a + b for a, b, d in zip(q1, q2, self.invariants)
        )

    def neg(self, q: Sequence[int]) -> tuple:
        return tuple((-a) % d if d else -a for a, d in zip(q, self.invariants))

    def reduce(self, q: Sequence[int]) -> tuple:
        return tuple(a % d if d else a for a, d in zip(q, self.invariants))

    def elements(self):
        """All quotient tuples in lexicographic order (finite case only)."""
        if any(d == 0 for d in self.invariants):
            raise InfiniteOrder("quotient has a free factor")
        if not self.invariants:
            yield ()
            return
        ranges = [range(d) for d in self.invariants]
        idx = [0] * len(ranges)
        while True:
            yield tuple(idx)
            pos = len(idx) - 1
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] < self.invariants[pos]:
                    break
                idx[pos] = 0
                pos -= 1
            if pos < 0:
                return
