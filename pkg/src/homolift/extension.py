"""Explicit finite extensions 1 -> M_k/N -> G -> L -> 1.

L is realized on permutations and enumerated by BFS; the factor set of the
extension determined by relator defects is reconstructed as the solution of a
linear system over M_k/N indexed by Cayley-graph edges (spanning-tree edges
normalized to zero).  Relator cycles based at every element span the cycle
space of the Cayley 2-complex, so those equations pin the factor set and the
resulting multiplication table is an honest group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .action import Action, QuotientAction, _parse_word, induced_quotient_action
from .action import core as invariant_core
from .action import minimal_invariant_subgroup
from .zkmod import (
    MatrixZk,
    ModuleVector,
    Modulus,
    QuotientModule,
    SubgroupBasis,
    ZkmodError,
    quotient_invariants,
    relative_quotient_invariants,
    solve_linear,
    subgroup_contains,
    vector,
)


class ExtensionError(ZkmodError):
    pass


class RelatorViolated(ExtensionError):
    def __init__(self, index: int):
        super().__init__(f"relator {index} does not hold on the permutation images")
        self.index = index


class GroupTooLarge(ExtensionError):
    pass


class Undecided(ExtensionError):
    def __init__(self, budget: int):
        super().__init__(f"coset enumeration exceeded budget {budget}")
        self.budget = budget


class InconsistentDefects(ExtensionError):
    pass


class BudgetExceeded(ExtensionError):
    def __init__(self, candidates: int):
        super().__init__(f"search would examine {candidates} candidates")
        self.candidates = candidates


def compose(x: Sequence[int], y: Sequence[int]) -> tuple:
    """x after y on points: (x o y)(i) = x(y(i))."""
    return tuple(x[y[i]] for i in range(len(x)))


def perm_inverse(x: Sequence[int]) -> tuple:
    out = [0] * len(x)
    for i, v in enumerate(x):
        out[v] = i
    return tuple(out)


def perm_from_cycles(text: str, degree: int = 0) -> tuple:
    """Parse 1-based cycle notation like '(1 2 3)(4 5)'; 'id' is allowed."""
    text = text.strip()
    pts: list = []
    cycles = []
    if text not in ("id", "()", ""):
        depth = 0
        cur: list = []
        tok = ""
        for ch in text:
            if ch == "(":
                if depth:
                    raise ValueError("nested cycle")
                depth = 1
                cur = []
                tok = ""
            elif ch == ")":
                if tok:
                    cur.append(int(tok))
                    tok = ""
                cycles.append(cur)
                depth = 0
            elif ch in " ,":
                if tok:
                    cur.append(int(tok))
                    tok = ""
            else:
                tok += ch
        if depth:
            raise ValueError("unbalanced parentheses in cycle notation")
        for c in cycles:
            pts.extend(c)
    n = max([degree] + pts)
    perm = list(range(n))
    for c in cycles:
        for i, p in enumerate(c):
            perm[p - 1] = c[(i + 1) % len(c)] - 1
    return tuple(perm)


class FiniteGroup:
    """Finite group on permutation generators, enumerated by BFS.

    Elements are indices into a BFS-ordered list (0 = identity); each element
    carries a canonical word (shortest, then lexicographically least) that the
    extension layer walks when accumulating factor-set values.
    """

    def __init__(self, names, perms, relators, elements, words, parents, name=None):
        self.names = tuple(names)
        self.generator_perms = tuple(perms)
        self.relators = tuple(relators)
        self.elements = tuple(elements)
        self.words = tuple(words)
        self.parents = tuple(parents)
        self.name = name
        self._index = {p: i for i, p in enumerate(self.elements)}
        self.order = len(self.elements)
        self._gen_elems = tuple(self._index[compose(self.elements[0], g)] for g in self.generator_perms)
        self._inv = tuple(self._index[perm_inverse(p)] for p in self.elements)
        self._table = None
        if self.order <= 1024:
            self._table = [
                [self._index[compose(a, b)] for b in self.elements] for a in self.elements
            ]

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        return self._index[compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def generator_element(self, j: int) -> int:
        return self._gen_elems[j]

    def element_of_name(self, name: str) -> int:
        return self._gen_elems[self.names.index(name)]

    def element_order(self, i: int) -> int:
        n = 1
        cur = i
        while cur != 0:
            cur = self.mul(cur, i)
            n += 1
        return n

    def evaluate_word(self, word) -> int:
        letters = _resolve_word(word, self.names) if isinstance(word, str) else _letters(word)
        cur = 0
        for j, sgn in letters:
            g = self._gen_elems[j]
            if sgn < 0:
                g = self.inv(g)
            cur = self.mul(cur, g)
        return cur

    def subgroup_closure(self, gens) -> tuple:
        seen = {0}
        frontier = [0]
        gens = list(gens)
        gens += [self.inv(g) for g in gens]
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = self.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        return tuple(sorted(seen))


def _letters(word) -> tuple:
    """Expand a parsed word into single (gen_index, +-1) letters."""
    out = []
    for j, exp in word:
        sgn = 1 if exp > 0 else -1
        out.extend([(j, sgn)] * abs(exp))
    return tuple(out)


def _resolve_word(word, names) -> tuple:
    parsed = _parse_word(word)
    resolved = []
    for name, exp in parsed:
        if name not in names:
            raise KeyError(f"unknown generator {name!r} in relator")
        resolved.append((names.index(name), exp))
    return _letters(resolved)


def realize_group(names, perms, relators, max_order: int = 100_000, name=None) -> FiniteGroup:
    """Enumerate the permutation group generated by perms; verify relators.

    Canonical words come from BFS over right multiplication by the generators
    in their given order, so ties break lexicographically.
    """
    names = tuple(names)
    perms = [perm_from_cycles(p) if isinstance(p, str) else tuple(p) for p in perms]
    degree = max(len(p) for p in perms)
    perms = [tuple(p) + tuple(range(len(p), degree)) for p in perms]
    for p in perms:
        if sorted(p) != list(range(degree)):
            raise ValueError(f"not a permutation: {p}")
    ident = tuple(range(degree))
    elements = [ident]
    words = [()]
    parents = [None]
    index = {ident: 0}
    head = 0
    while head < len(elements):
        cur = elements[head]
        for j, g in enumerate(perms):
            nxt = compose(cur, g)
            if nxt not in index:
                if len(elements) >= max_order:
                    raise GroupTooLarge(f"group exceeds {max_order} elements")
                index[nxt] = len(elements)
                elements.append(nxt)
                words.append(words[head] + (j,))
                parents.append((head, j))
        head += 1
    letter_relators = tuple(_resolve_word(r, names) for r in relators)
    for i, rel in enumerate(letter_relators):
        cur = ident
        for j, sgn in rel:
            g = perms[j] if sgn > 0 else perm_inverse(perms[j])
            cur = compose(cur, g)
        if cur != ident:
            raise RelatorViolated(i)
    return FiniteGroup(names, perms, letter_relators, elements, words, parents, name=name)


def coset_enumerate(names, relators, budget: int = 100_000) -> int:
    """Order of the group presented by the named generators and relators.

    HLT-style enumeration of cosets of the trivial subgroup with coincidence
    handling; raises Undecided when the table grows past the budget.
    """
    names = tuple(names)
    rels = [_resolve_word(r, names) if isinstance(r, str) else _letters(r) for r in relators]
    nlet = 2 * len(names)

    def letter(j, sgn):
        return 2 * j if sgn > 0 else 2 * j + 1

    def inv_letter(x):
        return x ^ 1

    letter_rels = [tuple(letter(j, sgn) for j, sgn in r) for r in rels]
    table = [[None] * nlet]
    p = [0]

    def rep(c):
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def set_entry(a, x, b):
        table[a][x] = b
        table[b][inv_letter(x)] = a

    def define(a, x):
        if len(table) >= budget:
            raise Undecided(budget)
        table.append([None] * nlet)
        p.append(len(table) - 1)
        set_entry(a, x, len(table) - 1)
        return len(table) - 1

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            p[b] = a
            queue.append(b)

    def coincidence(a, b):
        queue: list = []
        merge(a, b, queue)
        while queue:
            gamma = queue.pop(0)
            for x in range(nlet):
                delta = table[gamma][x]
                if delta is None:
                    continue
                table[delta][inv_letter(x)] = None
                mu, nu = rep(gamma), rep(delta)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][inv_letter(x)] is not None:
                    merge(mu, table[nu][inv_letter(x)], queue)
                else:
                    set_entry(mu, x, nu)

    def scan_and_fill(alpha, word):
        while True:
            f, i = alpha, 0
            while i < len(word) and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i == len(word):
                if f != alpha:
                    coincidence(f, alpha)
                return
            b, j = alpha, len(word) - 1
            while j >= i and table[b][inv_letter(word[j])] is not None:
                b = table[b][inv_letter(word[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                set_entry(f, word[i], b)
                return
            define(f, word[i])

    alpha = 0
    while alpha < len(table):
        if rep(alpha) != alpha:
            alpha += 1
            continue
        for w in letter_rels:
            if not w:
                continue
            scan_and_fill(alpha, w)
            if rep(alpha) != alpha:
                break
        if rep(alpha) == alpha:
            for x in range(nlet):
                if table[alpha][x] is None:
                    define(alpha, x)
        alpha += 1
    return sum(1 for c in range(len(table)) if rep(c) == c)


@dataclass(frozen=True)
class ExtensionSpec:
    """L with its homological action and one defect vector per relator."""

    group: FiniteGroup
    action: Action
    defects: tuple

    def __post_init__(self):
        if self.group.names != self.action.names:
            raise ValueError("group and action generator names differ")
        if len(self.defects) != len(self.group.relators):
            raise ValueError("one defect per relator required")
        for d in self.defects:
            if d.modulus != self.action.modulus or d.rank != self.action.rank:
                raise ValueError("defect does not live in the action module")

    @property
    def modulus(self) -> Modulus:
        return self.action.modulus

    @property
    def rank(self) -> int:
        return self.action.rank


@dataclass(frozen=True)
class EdgeDefectTable:
    """f(l, j) in M_k/N with s(l) psi_j = f(l, j) s(l phi_j); tree edges zero."""

    quotient: QuotientModule
    tree_edges: frozenset
    values: tuple  # values[elem][gen] = quotient tuple

    def value(self, elem: int, gen: int) -> tuple:
        return self.values[elem][gen]


def _qmat_mul(m1, m2, invariants):
    size = len(invariants)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            x = sum(m1[i][t] * m2[t][j] for t in range(size))
            d = invariants[j]
            row.append(x % d if d else x)
        out.append(tuple(row))
    return tuple(out)


def _qmat_identity(size):
    return tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size))


def _element_matrices(group: FiniteGroup, qact: QuotientAction) -> tuple:
    """Row-action matrix of conjugation by each element of L.

    Row matrices compose in reversed order: the element parent*g conjugates by
    g first, so its matrix is B_g times the parent's matrix.
    """
    invariants = qact.quotient.invariants
    size = len(invariants)
    mats = [None] * group.order
    mats[0] = _qmat_identity(size)
    for idx in range(1, group.order):
        parent, j = group.parents[idx]
        mats[idx] = _qmat_mul(qact.matrices[j], mats[parent], invariants)
    return tuple(mats)


def solve_edge_defects(spec: ExtensionSpec, n: SubgroupBasis) -> EdgeDefectTable:
    """Factor-set values on non-tree Cayley edges from the relator defects.

    For every element l and relator R_i, the defects accumulated along the
    relator cycle based at l must equal the action of l on (m_i mod N).  The
    unknowns enter with coefficients +-1, so each cyclic coordinate of the
    quotient yields an independent linear system over Z_d.

    Zeroing the spanning-tree edges fixes the gauge completely: a homogeneous
    solution sums to zero around every cycle, hence is the gradient of a
    potential on L, which the zero tree edges force to be constant.  The
    remaining freedom lives in the choice of tree (generator order); groups
    built from different trees are isomorphic, which the tests check by
    fingerprint rather than assume.
    """
    if not spec.modulus.finite:
        raise ExtensionError("extension construction requires a finite modulus")
    qmod, qact = induced_quotient_action(spec.action, n)
    group = spec.group
    elem_mats = _element_matrices(group, qact)
    ngens = len(group.names)

    tree = set()
    for idx in range(1, group.order):
        parent, j = group.parents[idx]
        tree.add((parent, j))

    edge_index = {}
    for ell in range(group.order):
        for j in range(ngens):
            if (ell, j) not in tree:
                edge_index[(ell, j)] = len(edge_index)

    defect_images = [qmod.project_vector(d) for d in spec.defects]
    gen_elems = [group.generator_element(j) for j in range(ngens)]
    inv_gen_elems = [group.inv(g) for g in gen_elems]

    rows = []
    rhs = []
    for ell in range(group.order):
        for rel, dimg in zip(group.relators, defect_images):
            coeffs = [0] * len(edge_index)
            cur = ell
            for j, sgn in rel:
                if sgn > 0:
                    edge = (cur, j)
                    if edge in edge_index:
                        coeffs[edge_index[edge]] += 1
                    cur = group.mul(cur, gen_elems[j])
                else:
                    cur = group.mul(cur, inv_gen_elems[j])
                    edge = (cur, j)
                    if edge in edge_index:
                        coeffs[edge_index[edge]] -= 1
            if cur != ell:
                raise ExtensionError("relator does not close in L")
            rows.append(coeffs)
            rhs.append(qact.apply(elem_mats[ell], dimg))

    nunk = len(edge_index)
    size = len(qmod.invariants)
    solution = [[0] * size for _ in range(nunk)]
    if nunk == 0 or size == 0:
        for r, target in zip(rows, rhs):
            if any(target):
                raise InconsistentDefects("defects admit no factor set")
    else:
        for t in range(size):
            d = qmod.invariants[t]
            mat = MatrixZk(Modulus(d), tuple(tuple(c % d for c in row) for row in rows))
            b = vector(d, tuple(target[t] for target in rhs))
            sol = solve_linear(mat, b)
            if sol is None:
                raise InconsistentDefects(f"no factor set in coordinate {t}")
            for e in range(nunk):
                solution[e][t] = sol.particular.coords[e]

    zero = qmod.zero()
    values = []
    for ell in range(group.order):
        row = []
        for j in range(ngens):
            if (ell, j) in tree:
                row.append(zero)
            else:
                row.append(tuple(solution[edge_index[(ell, j)]]))
        values.append(tuple(row))
    return EdgeDefectTable(qmod, frozenset(tree), tuple(values))


class ExtGroup:
    """The group on pairs (v, l), v in M_k/N, built from an edge-defect table.

    Multiplication: (v1, l1)(v2, l2) = (v1 + A_{l1} v2 + c(l1, l2), l1 l2),
    with c accumulated from the edge-defect table along l2's canonical word.
    """

    def __init__(self, spec: ExtensionSpec, subgroup: SubgroupBasis, table: EdgeDefectTable, qact: QuotientAction):
        self.spec = spec
        self.subgroup = subgroup
        self.table = table
        self.quotient = table.quotient
        self.qact = qact
        self.group = spec.group
        self.elem_mats = _element_matrices(spec.group, qact)
        self._cocycle = self._build_cocycle()

    def _build_cocycle(self):
        group = self.group
        gen_elems = [group.generator_element(j) for j in range(len(group.names))]
        coc = []
        for l1 in range(group.order):
            row = []
            for l2 in range(group.order):
                acc = self.quotient.zero()
                cur = l1
                for j in group.words[l2]:
                    acc = self.quotient.add(acc, self.table.value(cur, j))
                    cur = group.mul(cur, gen_elems[j])
                row.append(acc)
            coc.append(tuple(row))
        return tuple(coc)

    @property
    def size(self) -> int:
        return self.quotient.size * self.group.order

    def identity(self):
        return (self.quotient.zero(), 0)

    def multiply(self, e1, e2):
        v1, l1 = e1
        v2, l2 = e2
        moved = self.qact.apply(self.elem_mats[l1], v2)
        v = self.quotient.add(self.quotient.add(v1, moved), self._cocycle[l1][l2])
        return (v, self.group.mul(l1, l2))

    def inverse(self, e):
        v, l = e
        li = self.group.inv(l)
        inner = self.quotient.add(v, self._cocycle[l][li])
        w = self.qact.apply(self.elem_mats[li], self.quotient.neg(inner))
        return (w, li)

    def element_order(self, e) -> int:
        ident = self.identity()
        cur = e
        n = 1
        while cur != ident:
            cur = self.multiply(cur, e)
            n += 1
        return n

    def elements(self):
        for l in range(self.group.order):
            for q in self.quotient.elements():
                yield (q, l)

    def kernel_elements(self):
        return [(q, 0) for q in self.quotient.elements()]

    def generator_lift(self, j: int):
        return (self.quotient.zero(), self.group.generator_element(j))

    def project(self, e) -> int:
        return e[1]

    def module_element(self, v: ModuleVector):
        return (self.quotient.project_vector(v), 0)

    def evaluate_on(self, letters, assignment):
        """Evaluate a letter word on per-generator elements of this group."""
        cur = self.identity()
        for j, sgn in letters:
            t = assignment[j] if sgn > 0 else self.inverse(assignment[j])
            cur = self.multiply(cur, t)
        return cur


def build_ext_group(spec: ExtensionSpec, n: SubgroupBasis) -> ExtGroup:
    if not spec.modulus.finite:
        raise ExtensionError("extension construction requires a finite modulus")
    table = solve_edge_defects(spec, n)
    _, qact = induced_quotient_action(spec.action, n)
    return ExtGroup(spec, n, table, qact)


def split_test(g: ExtGroup, budget: int = 1_000_000):
    """Section search: per-generator kernel offsets making all relators trivial.

    Returns the lexicographically least witness (one element per generator of
    L) or None after an exhaustive sweep.  Relators are checked as soon as all
    generators they mention are assigned, which prunes the product space.
    """
    group = g.group
    ngens = len(group.names)
    qsize = g.quotient.size
    if qsize**ngens > budget:
        raise BudgetExceeded(qsize**ngens)
    by_level: list = [[] for _ in range(ngens)]
    for rel in group.relators:
        if not rel:
            continue
        lvl = max(j for j, _ in rel)
        by_level[lvl].append(rel)
    ident = g.identity()
    assignment: list = [None] * ngens
    qelems = list(g.quotient.elements())

    def place(level):
        if level == ngens:
            return tuple(assignment)
        base = group.generator_element(level)
        for q in qelems:
            assignment[level] = (q, base)
            if all(g.evaluate_on(rel, assignment) == ident for rel in by_level[level]):
                found = place(level + 1)
                if found is not None:
                    return found
        assignment[level] = None
        return None

    return place(0)


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants used to pin down the small groups that occur."""

    order: int
    abelian_invariants: tuple
    order_histogram: tuple
    center_order: int
    derived_order: int
    splits_over_kernel: Optional[bool] = None


@dataclass(frozen=True)
class Identification:
    fingerprint: Fingerprint
    name: Optional[str]


def abelian_name(invariants) -> str:
    if not invariants:
        return "1"
    parts = []
    i = 0
    invariants = list(invariants)
    while i < len(invariants):
        j = i
        while j < len(invariants) and invariants[j] == invariants[i]:
            j += 1
        if j - i == 1:
            parts.append(f"Z{invariants[i]}")
        else:
            parts.append(f"Z{invariants[i]}^{j - i}")
        i = j
    return " x ".join(parts)


class _Walkable:
    """Uniform (elements, mul, inv, id, gens) view for identify()."""

    def __init__(self, elements, mul, inv, ident, gens):
        self.elements = elements
        self.mul = mul
        self.inv = inv
        self.ident = ident
        self.gens = gens


def _walkable(g, elements=None) -> _Walkable:
    if isinstance(g, ExtGroup):
        elems = list(g.elements()) if elements is None else list(elements)
        gens = None
        if elements is None:
            gens = [g.module_element(ModuleVector(g.subgroup.modulus, r))
                    for r in MatrixZk.identity(g.subgroup.modulus.k, g.spec.rank).rows]
            gens = [e for e in gens if e != g.identity()]
            gens += [g.generator_lift(j) for j in range(len(g.group.names))]
        else:
            gens = list(elements)
        return _Walkable(elems, g.multiply, g.inverse, g.identity(), gens)
    if isinstance(g, FiniteGroup):
        elems = list(range(g.order)) if elements is None else list(elements)
        gens = [g.generator_element(j) for j in range(len(g.names))] if elements is None else list(elements)
        return _Walkable(elems, g.mul, g.inv, 0, gens)
    raise TypeError(f"cannot identify {type(g).__name__}")


def _closure(mul, ident, gens):
    seen = {ident}
    frontier = [ident]
    while frontier:
        a = frontier.pop()
        for b in gens:
            c = mul(a, b)
            if c not in seen:
                seen.add(c)
                frontier.append(c)
    return seen


def _derived_subgroup(w: _Walkable):
    comms = set()
    for a in w.gens:
        for b in w.gens:
            c = w.mul(w.mul(a, b), w.mul(w.inv(a), w.inv(b)))
            comms.add(c)
    gens = set(comms)
    # normal closure under conjugation by the group generators
    while True:
        new = set()
        for c in gens:
            for x in w.gens:
                conj = w.mul(w.mul(x, c), w.inv(x))
                if conj not in gens:
                    new.add(conj)
        if not new:
            break
        gens |= new
    closed = _closure(w.mul, w.ident, list(gens) + [w.inv(c) for c in gens])
    return closed


def _abelian_invariants_of_quotient(w: _Walkable, normal: set) -> tuple:
    """Invariant factors of G / normal (the quotient must be abelian)."""
    coset_of = {}
    reps = []
    for e in w.elements:
        if e not in coset_of:
            idx = len(reps)
            for d in normal:
                coset_of[w.mul(e, d)] = idx
            reps.append(e)
    size = len(reps)
    table = [[coset_of[w.mul(reps[i], reps[j])] for j in range(size)] for i in range(size)]
    return _abelian_invariants_from_table(table, coset_of[w.ident])


def _abelian_invariants_from_table(table, ident) -> tuple:
    """Peel maximal-order cyclic factors: an element of exponent order spans a
    direct factor of a finite abelian group."""
    invs = []
    while len(table) > 1:
        size = len(table)

        def order_of(i):
            n, cur = 1, i
            while cur != ident:
                cur = table[cur][i]
                n += 1
            return n

        orders = [order_of(i) for i in range(size)]
        exp = max(orders)
        x = orders.index(exp)
        invs.append(exp)
        sub = []
        cur = ident
        while True:
            sub.append(cur)
            cur = table[cur][x]
            if cur == ident:
                break
        coset_of = {}
        reps = []
        for i in range(size):
            if i not in coset_of:
                idx = len(reps)
                for d in sub:
                    coset_of[table[i][d]] = idx
                reps.append(i)
        nsize = len(reps)
        table = [[coset_of[table[reps[i]][reps[j]]] for j in range(nsize)] for i in range(nsize)]
        ident = coset_of[ident]
    return tuple(reversed(invs))


def identify(g, elements=None, budget: int = 10_000, split_flag: Optional[bool] = None) -> Identification:
    """Fingerprint (order, abelianization, order census, center, derived order)
    plus a recognized name when it matches the small-group table."""
    w = _walkable(g, elements)
    n = len(w.elements)
    if n > budget:
        raise BudgetExceeded(n)
    hist: dict = {}
    for e in w.elements:
        o = 1
        cur = e
        while cur != w.ident:
            cur = w.mul(cur, e)
            o += 1
        hist[o] = hist.get(o, 0) + 1
    histogram = tuple(sorted(hist.items()))
    center = sum(1 for e in w.elements if all(w.mul(e, x) == w.mul(x, e) for x in w.gens))
    derived = _derived_subgroup(w)
    ab = _abelian_invariants_of_quotient(w, derived)
    fp = Fingerprint(n, ab, histogram, center, len(derived), split_flag)
    return Identification(fp, _recognize(fp))


def _recognize(fp: Fingerprint) -> Optional[str]:
    n = fp.order
    hist = dict(fp.order_histogram)
    if fp.derived_order == 1:
        return abelian_name(fp.abelian_invariants)
    if n == 6:
        return "S3"
    if n == 8:
        if hist.get(2, 0) == 5:
            return "D4"
        if hist.get(2, 0) == 1:
            return "Q8"
    if n == 12 and hist.get(2, 0) == 3 and hist.get(3, 0) == 8:
        return "A4"
    if n == 16 and hist.get(8, 0) > 0:
        # the four nonabelian order-16 groups with a cyclic subgroup of order 8
        # are separated by their involution counts
        if hist.get(2, 0) == 5 and fp.center_order == 2:
            return "SD16 (semidihedral)"
        if hist.get(2, 0) == 3 and fp.center_order == 4:
            return "M4(2) (modular)"
        if hist.get(2, 0) == 9:
            return "D8"
        if hist.get(2, 0) == 1:
            return "Q16"
    if n == 24 and fp.center_order == 1 and fp.derived_order == 12 and hist.get(2, 0) == 9:
        return "S4"
    if n == 60 and fp.derived_order == 60:
        return "A5"
    return None


@dataclass(frozen=True)
class ClosureReport:
    """Everything the Galois-closure pipeline produces for (spec, N_1)."""

    n1: SubgroupBasis
    n2: SubgroupBasis
    ahat_invariants: tuple
    u_invariants: tuple
    k_invariants: tuple
    group: ExtGroup
    order: int
    split: bool
    complement: Optional[tuple]
    corollary_guarantee: bool
    identification: Optional[Identification]
    group_name: Optional[str]


def galois_closure_pipeline(
    spec: ExtensionSpec,
    n1: SubgroupBasis,
    split_budget: int = 1_000_000,
    identify_budget: int = 10_000,
) -> ClosureReport:
    """N_2 = core(N_1), the quotient groups, G = extension/N_2, split verdict.

    When the minimal invariant subgroup generated by the defects sits inside
    N_1 the splitting is guaranteed and the witness is required to exist.
    """
    act = spec.action
    n2 = invariant_core(act, n1)
    ahat = quotient_invariants(n1)
    k_invs = quotient_invariants(n2)
    u_invs = relative_quotient_invariants(n1, n2)
    g = build_ext_group(spec, n2)
    witness = split_test(g, budget=split_budget)
    closure = minimal_invariant_subgroup(act, list(spec.defects))
    guarantee = subgroup_contains(n1, closure)
    if guarantee and witness is None:
        raise AssertionError("guaranteed split produced no witness")
    identification = None
    if g.size <= identify_budget:
        identification = identify(g, split_flag=witness is not None)
    name = identification.name if identification else None
    if name is None and witness is not None:
        lname = spec.group.name or "L"
        name = f"{abelian_name(k_invs)} : {lname}"
    return ClosureReport(
        n1=n1,
        n2=n2,
        ahat_invariants=ahat,
        u_invariants=u_invs,
        k_invariants=k_invs,
        group=g,
        order=g.size,
        split=witness is not None,
        complement=witness,
        corollary_guarantee=guarantee,
        identification=identification,
        group_name=name,
    )
