"""Admissible partitions and decompositions, factors, the complementary-partition
cascade theorem, and Yoeli's auxiliary construction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import clamp_label
from .automata import (
    CoveringWitness,
    Semiautomaton,
    _unique_labels,
    cascade_product,
    compose_coverings,
)
from .errors import InvalidInputError


class Partition:
    """Disjoint nonempty blocks covering the state set, in given block order."""

    def __init__(self, n_states: int, blocks):
        self.n_states = int(n_states)
        self.blocks = tuple(tuple(sorted(int(s) for s in b)) for b in blocks)
        seen = set()
        for b in self.blocks:
            if not b:
                raise InvalidInputError("empty block")
            for s in b:
                if not 0 <= s < self.n_states:
                    raise InvalidInputError("state %d out of range" % s)
                if s in seen:
                    raise InvalidInputError("state %d appears in two blocks" % s)
                seen.add(s)
        if len(seen) != self.n_states:
            raise InvalidInputError("blocks do not cover the state set")
        self.block_of = [0] * self.n_states
        for i, b in enumerate(self.blocks):
            for s in b:
                self.block_of[s] = i
        self.block_of = tuple(self.block_of)

    @property
    def count(self) -> int:
        return len(self.blocks)

    @property
    def max_block_size(self) -> int:
        return max(len(b) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __repr__(self):
        return "Partition(%s)" % (list(map(list, self.blocks)),)


class Decomposition:
    """Nonempty blocks covering the state set; overlap is allowed."""

    def __init__(self, n_states: int, blocks):
        self.n_states = int(n_states)
        self.blocks = tuple(tuple(sorted(int(s) for s in set(b))) for b in blocks)
        covered = set()
        for b in self.blocks:
            if not b:
                raise InvalidInputError("empty block")
            for s in b:
                if not 0 <= s < self.n_states:
                    raise InvalidInputError("state %d out of range" % s)
            covered.update(b)
        if covered != set(range(self.n_states)):
            raise InvalidInputError("blocks do not cover the state set")

    @property
    def count(self) -> int:
        return len(self.blocks)

    @property
    def max_block_size(self) -> int:
        return max(len(b) for b in self.blocks)

    def is_partition(self) -> bool:
        return sum(len(b) for b in self.blocks) == self.n_states

    def __repr__(self):
        return "Decomposition(%s)" % (list(map(list, self.blocks)),)


@dataclass(frozen=True)
class FactorChoice:
    """Resolved block targets of a factor, with the cells that were arbitrary."""

    target_block: tuple
    dont_care: frozenset


def _image_of_block(A: Semiautomaton, block, a: int):
    return {A.delta[s][a] for s in block}


def is_admissible_partition(A: Semiautomaton, P: Partition) -> bool:
    if P.n_states != A.n_states:
        raise InvalidInputError("partition is over a different state count")
    for block in P.blocks:
        for a in range(A.n_symbols):
            if len({P.block_of[t] for t in _image_of_block(A, block, a)}) != 1:
                return False
    return True


def is_admissible_decomposition(A: Semiautomaton, D: Decomposition) -> bool:
    if D.n_states != A.n_states:
        raise InvalidInputError("decomposition is over a different state count")
    sets = [set(b) for b in D.blocks]
    for block in D.blocks:
        for a in range(A.n_symbols):
            img = _image_of_block(A, block, a)
            if not any(img <= b for b in sets):
                return False
    return True


def _block_label(A: Semiautomaton, block, idx: int) -> str:
    lab = "{%s}" % ",".join(A.state_labels[s] for s in block)
    return clamp_label(lab, "B%d" % idx)


def p_factor(A: Semiautomaton, P: Partition):
    """The quotient B = A/P plus the witness that A covers it (phi = block map)."""
    if not is_admissible_partition(A, P):
        raise InvalidInputError("partition is not admissible")
    delta = []
    for block in P.blocks:
        row = []
        for a in range(A.n_symbols):
            row.append(P.block_of[A.delta[block[0]][a]])
        delta.append(row)
    B = Semiautomaton(
        _unique_labels(_block_label(A, b, i) for i, b in enumerate(P.blocks)),
        A.symbol_labels,
        delta,
    )
    witness = CoveringWitness(A, B, P.block_of, range(A.n_symbols))
    return B, witness


def d_factor(A: Semiautomaton, D: Decomposition, choice=None):
    """The quotient B = A/D; arbitrary cells go to the lowest admissible block.

    A caller may pass its own choice table [block][symbol] -> block; every entry
    is still validated against the containment condition.
    """
    if not is_admissible_decomposition(A, D):
        raise InvalidInputError("decomposition is not admissible")
    sets = [set(b) for b in D.blocks]
    delta = []
    dont_care = set()
    for i, block in enumerate(D.blocks):
        row = []
        for a in range(A.n_symbols):
            img = _image_of_block(A, block, a)
            candidates = [j for j, b in enumerate(sets) if img <= b]
            if choice is not None:
                j = int(choice[i][a])
                if j not in candidates:
                    raise InvalidInputError(
                        "choice table sends block %d under symbol %s outside containment"
                        % (i, A.symbol_labels[a])
                    )
            else:
                j = candidates[0]
            if len(candidates) > 1:
                dont_care.add((i, a))
            row.append(j)
        delta.append(row)
    B = Semiautomaton(
        _unique_labels(_block_label(A, b, i) for i, b in enumerate(D.blocks)),
        A.symbol_labels,
        delta,
    )
    return B, FactorChoice(tuple(tuple(r) for r in delta), frozenset(dont_care))


def complementary_partition(n_states: int, P: Partition) -> Partition:
    """Q with m(P) blocks meeting every P-block at most once.

    Q_j collects the j-th element (ascending) of every P-block large enough to
    have one, so P meet Q is the finest partition.
    """
    if P.n_states != n_states:
        raise InvalidInputError("partition is over a different state count")
    m = P.max_block_size
    blocks = []
    for j in range(m):
        q = [b[j] for b in P.blocks if len(b) > j]
        blocks.append(q)
    return Partition(n_states, blocks)


def _check_complementary(P: Partition, Q: Partition):
    for pb in P.blocks:
        pset = set(pb)
        for qb in Q.blocks:
            if len(pset & set(qb)) > 1:
                raise InvalidInputError(
                    "given complement meets a partition block more than once"
                )


@dataclass
class CascadeCover:
    b: Semiautomaton
    c: Semiautomaton
    omega: tuple
    product: Semiautomaton
    witness: CoveringWitness
    dont_care: frozenset
    partition: Partition
    complement: Partition


def cascade_cover_from_partition(A: Semiautomaton, P: Partition, q: Optional[Partition] = None) -> CascadeCover:
    """The two-factor cascade B∘C >= A built from an admissible partition.

    B = A/P tracks the block; C tracks the position inside the block via a
    complementary partition Q (any partition meeting each P-block at most once
    may be passed in as q). C's inputs are the pairs (B-state, symbol); its
    unconstrained cells go to block 0 and are reported as dont_care pairs
    (C-state, C-symbol index).
    """
    B, _ = p_factor(A, P)
    Q = complementary_partition(A.n_states, P) if q is None else q
    _check_complementary(P, Q)

    nsym = A.n_symbols
    c_symbols = _unique_labels(
        clamp_label(
            "(%s,%s)" % (B.state_labels[i], A.symbol_labels[a]),
            "x%d" % (i * nsym + a),
        )
        for i in range(B.n_states)
        for a in range(nsym)
    )
    # cell (j, (i,a)): the unique state in Q_j ∩ P_i moved by a, read off in Q
    delta_c = []
    dont_care = set()
    for j, qb in enumerate(Q.blocks):
        row = []
        for i, pb in enumerate(P.blocks):
            inter = set(qb) & set(pb)
            for a in range(nsym):
                sym = i * nsym + a
                if inter:
                    (s,) = inter
                    row.append(Q.block_of[A.delta[s][a]])
                else:
                    row.append(0)
                    dont_care.add((j, sym))
        # row was built in (i, a) order already matching sym indexing
        delta_c.append(row)
    C = Semiautomaton(
        _unique_labels(_block_label(A, b, j) for j, b in enumerate(Q.blocks)),
        c_symbols,
        delta_c,
    )

    omega = tuple(
        tuple(i * nsym + a for a in range(nsym)) for i in range(B.n_states)
    )
    product = cascade_product(B, C, omega)

    phi = []
    for i, pb in enumerate(P.blocks):
        pset = set(pb)
        for j, qb in enumerate(Q.blocks):
            inter = pset & set(qb)
            phi.append(inter.pop() if inter else None)
    witness = CoveringWitness(product, A, phi, range(nsym))
    return CascadeCover(B, C, omega, product, witness, frozenset(dont_care), P, Q)


@dataclass
class YoeliAuxiliary:
    a_star: Semiautomaton
    d_star: Partition
    witness: CoveringWitness
    b_star: Semiautomaton
    states: tuple


def yoeli_auxiliary(A: Semiautomaton, D: Decomposition, factor=None) -> YoeliAuxiliary:
    """State splitting: A* lives on pairs (s, block) with s in the block.

    The second component follows the D-factor B, so the partition D* by second
    component is admissible and A*/D* reproduces B's table exactly; phi
    forgetting the block component makes A* cover A.
    """
    if factor is None:
        factor = d_factor(A, D)
    B, fc = factor
    if B.n_states != D.count or B.symbol_labels != A.symbol_labels:
        raise InvalidInputError("factor automaton does not match the decomposition")
    sets = [set(b) for b in D.blocks]
    for i in range(D.count):
        for a in range(A.n_symbols):
            if not _image_of_block(A, D.blocks[i], a) <= sets[B.delta[i][a]]:
                raise InvalidInputError(
                    "factor automaton violates containment at block %d, symbol %s"
                    % (i, A.symbol_labels[a])
                )

    states = tuple((s, i) for i, b in enumerate(D.blocks) for s in b)
    index = {pair: k for k, pair in enumerate(states)}
    labels = _unique_labels(
        clamp_label("(%s,%s)" % (A.state_labels[s], B.state_labels[i]), "q%d" % k)
        for k, (s, i) in enumerate(states)
    )
    delta = [
        [index[(A.delta[s][a], B.delta[i][a])] for a in range(A.n_symbols)]
        for s, i in states
    ]
    a_star = Semiautomaton(labels, A.symbol_labels, delta)

    d_star = Partition(
        len(states),
        [[k for k, (s, i) in enumerate(states) if i == j] for j in range(D.count)],
    )
    witness = CoveringWitness(
        a_star, A, [s for s, i in states], range(A.n_symbols)
    )
    b_star, _ = p_factor(a_star, d_star)
    if b_star.delta != B.delta:
        raise InvalidInputError("auxiliary quotient disagrees with the factor table")
    return YoeliAuxiliary(a_star, d_star, witness, b_star, states)


@dataclass
class DecompositionCover:
    b_star: Semiautomaton
    c: Semiautomaton
    omega: tuple
    product: Semiautomaton
    witness: CoveringWitness
    yoeli: YoeliAuxiliary
    factor_choice: FactorChoice


def cascade_cover_from_decomposition(A: Semiautomaton, D: Decomposition, choice=None) -> DecompositionCover:
    """B*∘C >= A for an admissible decomposition, via the auxiliary automaton."""
    B, fc = d_factor(A, D, choice)
    aux = yoeli_auxiliary(A, D, (B, fc))
    cover = cascade_cover_from_partition(aux.a_star, aux.d_star)
    witness = compose_coverings(cover.witness, aux.witness)
    return DecompositionCover(
        cover.b, cover.c, cover.omega, cover.product, witness, aux, fc
    )
