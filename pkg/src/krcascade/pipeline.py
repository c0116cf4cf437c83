"""Permutation-reset chains, grouplike machinery, and the full Krohn-Rhodes
decomposition tree.

Every constructed covering is kept as an explicit witness; the tree's root
witness proves that the assembled cascade covers the original automaton.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Optional, Union

from .algebra import CLOSURE_CAP, clamp_label, closure_generate
from .automata import (
    CoveringWitness,
    Semiautomaton,
    VerificationResult,
    _unique_labels,
    cascade_product,
    compose_coverings,
    direct_product,
    identity_witness,
    simulation_counterexample,
    substitute_left,
    substitute_right,
    transition_monoid,
    verify_covering,
)
from .errors import (
    InvalidInputError,
    NotPermutationResetError,
    ResourceCapError,
    WitnessError,
)
from .groups import (
    CosetPartition,
    FiniteGroup,
    coset_partition,
    factor_group,
    is_simple,
    subgroup_as_group,
)
from .groups import composition_series as _composition_series
from .partitions import (
    Decomposition,
    Partition,
    cascade_cover_from_decomposition,
    cascade_cover_from_partition,
    complementary_partition,
    p_factor,
)


@dataclass(frozen=True)
class Caps:
    """Resource guards; breaches become raw leaves, not crashes."""

    group_order: int = 24
    product_states: int = 500_000
    closure_elements: int = CLOSURE_CAP


class InputClass(enum.Enum):
    PERMUTATION = "permutation"
    RESET = "reset"
    OTHER = "other"


def classify_inputs(A: Semiautomaton):
    """Per-symbol class; a permutation (including the identity) wins over reset."""
    out = {}
    for a in range(A.n_symbols):
        t = A.symbol_transformation(a)
        if t.is_permutation():
            cls = InputClass.PERMUTATION
        elif t.is_reset():
            cls = InputClass.RESET
        else:
            cls = InputClass.OTHER
        out[A.symbol_labels[a]] = cls
    return out


def is_permutation(A: Semiautomaton) -> bool:
    return all(A.symbol_transformation(a).is_permutation() for a in range(A.n_symbols))


def is_reset(A: Semiautomaton) -> bool:
    """Every input is the identity or a constant map."""
    return all(
        t.is_identity() or t.is_reset()
        for t in (A.symbol_transformation(a) for a in range(A.n_symbols))
    )


def is_permutation_reset(A: Semiautomaton) -> bool:
    return all(
        t.is_permutation() or t.is_reset()
        for t in (A.symbol_transformation(a) for a in range(A.n_symbols))
    )


LEAF_GROUPLIKE = "simple-grouplike"
LEAF_RESET = "two-state-reset"
LEAF_RAW = "raw"


@dataclass(frozen=True)
class Leaf:
    kind: str
    automaton: Semiautomaton
    witness: CoveringWitness
    group: Optional[FiniteGroup] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class CascadeNode:
    left: "Node"
    right: "Node"
    omega: tuple
    automaton: Semiautomaton
    witness: CoveringWitness


@dataclass(frozen=True)
class DirectNode:
    left: "Node"
    right: "Node"
    automaton: Semiautomaton
    witness: CoveringWitness


Node = Union[Leaf, CascadeNode, DirectNode]


def leaves(node):
    if isinstance(node, Leaf):
        yield node
    else:
        yield from leaves(node.left)
        yield from leaves(node.right)


def iter_nodes(node):
    yield node
    if not isinstance(node, Leaf):
        yield from iter_nodes(node.left)
        yield from iter_nodes(node.right)


def is_complete(node) -> bool:
    return all(leaf.kind != LEAF_RAW for leaf in leaves(node))


def _require(result, context):
    if not result:
        raise WitnessError("%s: %s" % (context, result.reason))


def _raw_leaf(A: Semiautomaton, reason: str) -> Leaf:
    return Leaf(LEAF_RAW, A, identity_witness(A), reason=reason)


def grouplike_of(G: FiniteGroup) -> Semiautomaton:
    """States and inputs are the group; transitions are right multiplications."""
    labels = _unique_labels(G.labels)
    return Semiautomaton(labels, labels, [list(row) for row in G.table])


def cover_permutation_by_grouplike(pi: Semiautomaton, closure_cap: int = CLOSURE_CAP):
    """The grouplike cover of a permutation semiautomaton in regular form.

    Expects the states to be the elements of the automaton's own transition
    group in closure order (as split_permutation_reset produces); phi is then
    the identity and each input maps to the group element acting like it.
    """
    if not is_permutation(pi):
        raise InvalidInputError("not a permutation semiautomaton")
    M = transition_monoid(pi, cap=closure_cap)
    if M.order != pi.n_states:
        raise InvalidInputError(
            "states do not form the transition group: %d states, group order %d"
            % (pi.n_states, M.order)
        )
    G = FiniteGroup(M)
    glike = grouplike_of(G)
    elt = {t.image: k for k, t in enumerate(M.transformations)}
    xi = [elt[pi.symbol_transformation(a).image] for a in range(pi.n_symbols)]
    witness = CoveringWitness(glike, pi, range(pi.n_states), xi)
    _require(verify_covering(witness), "grouplike cover of the permutation automaton")
    return G, witness


@dataclass
class PRSplit:
    pi: Semiautomaton
    r: Semiautomaton
    omega: tuple
    product: Semiautomaton
    witness: CoveringWitness


def split_permutation_reset(A: Semiautomaton, caps: Caps = Caps()) -> PRSplit:
    """Factor a permutation-reset automaton as Pi∘R >= A.

    Pi is the group generated by the permutation inputs acting on itself by
    right multiplication; reset inputs leave it in place. R remembers the
    actual state as seen from Pi's frame: a reset to c lands R in c shifted
    back by the inverse of the accumulated permutation, and phi replays the
    permutation on top of R's state.
    """
    n, m = A.n_states, A.n_symbols
    perm = []
    const = [None] * m
    for a in range(m):
        t = A.symbol_transformation(a)
        if t.is_permutation():
            perm.append(a)
        elif t.is_reset():
            const[a] = t.image[0]
        else:
            raise NotPermutationResetError(
                "input %s is neither a permutation nor a reset" % A.symbol_labels[a]
            )
    K = closure_generate(
        [A.symbol_transformation(a) for a in perm],
        domain_size=n,
        cap=caps.closure_elements,
        symbol_labels=[A.symbol_labels[a] for a in perm],
    )
    if K.order > caps.group_order:
        raise ResourceCapError(
            "permutation group of order %d exceeds the cap of %d"
            % (K.order, caps.group_order)
        )
    elt = {t.image: k for k, t in enumerate(K.transformations)}
    nk = K.order

    delta_pi = []
    for x in range(nk):
        row = []
        for a in range(m):
            if const[a] is None:
                row.append(elt[K.transformations[x].compose(A.symbol_transformation(a)).image])
            else:
                row.append(x)
        delta_pi.append(row)
    pi = Semiautomaton(K.labels, A.symbol_labels, delta_pi)

    r_symbols = _unique_labels(
        clamp_label("(%s,%s)" % (K.labels[x], A.symbol_labels[a]), "x%d" % (x * m + a))
        for x in range(nk)
        for a in range(m)
    )
    inverses = [K.transformations[x].inverse().image for x in range(nk)]
    delta_r = []
    for s in range(n):
        row = []
        for x in range(nk):
            for a in range(m):
                row.append(s if const[a] is None else inverses[x][const[a]])
        delta_r.append(row)
    r = Semiautomaton(list(A.state_labels), r_symbols, delta_r)

    omega = tuple(tuple(x * m + a for a in range(m)) for x in range(nk))
    product = cascade_product(pi, r, omega)
    phi = [K.transformations[x].image[s] for x in range(nk) for s in range(n)]
    witness = CoveringWitness(product, A, phi, range(m))
    _require(verify_covering(witness), "permutation-reset split")
    return PRSplit(pi, r, omega, product, witness)


@dataclass
class ResetFactorization:
    factors: list
    tree: Node

    @property
    def product(self) -> Semiautomaton:
        return self.tree.automaton

    @property
    def witness(self) -> CoveringWitness:
        return self.tree.witness


def _two_state_identity_cover(A: Semiautomaton) -> Leaf:
    two = Semiautomaton(
        ["r0", "r1"],
        A.symbol_labels,
        [[0] * A.n_symbols, [1] * A.n_symbols],
    )
    witness = CoveringWitness(two, A, [0, 0], range(A.n_symbols))
    return Leaf(LEAF_RESET, two, witness)


def reset_to_two_state(R: Semiautomaton) -> ResetFactorization:
    """Cover a reset automaton by a direct product of two-state reset automata.

    Splits the states into two balanced blocks; the block quotient is one
    factor and the quotient by a complementary partition carries the rest,
    halving the state count each round. Every partition of a reset automaton
    is admissible, so both quotients always exist.
    """
    if not is_reset(R):
        raise InvalidInputError("not a reset semiautomaton")

    def build(X: Semiautomaton) -> Node:
        nx = X.n_states
        if nx == 1:
            return _two_state_identity_cover(X)
        if nx == 2:
            return Leaf(LEAF_RESET, X, identity_witness(X))
        half = (nx + 1) // 2
        P = Partition(nx, [range(half), range(half, nx)])
        B, _ = p_factor(X, P)
        Q = complementary_partition(nx, P)
        rest, _ = p_factor(X, Q)
        prod = direct_product(B, rest)
        phi = []
        for pb in P.blocks:
            pset = set(pb)
            for qb in Q.blocks:
                inter = pset & set(qb)
                phi.append(inter.pop() if inter else None)
        w0 = CoveringWitness(prod, X, phi, range(X.n_symbols))
        sub = build(rest)
        w_v = sub.witness
        prod_bv = direct_product(B, sub.automaton)
        nv = sub.automaton.n_states
        phi2 = []
        for i in range(2):
            for v in range(nv):
                pv = w_v.phi[v]
                phi2.append(None if pv is None else i * rest.n_states + pv)
        w_sub = CoveringWitness(prod_bv, prod, phi2, range(X.n_symbols))
        witness = compose_coverings(w_sub, w0)
        left = Leaf(LEAF_RESET, B, identity_witness(B))
        return DirectNode(left, sub, prod_bv, witness)

    tree = build(R)
    _require(verify_covering(tree.witness), "two-state reset factorization")
    return ResetFactorization([leaf.automaton for leaf in leaves(tree)], tree)


@dataclass
class ChainStep:
    source: Semiautomaton
    b: Semiautomaton
    c: Semiautomaton
    omega: tuple
    product: Semiautomaton
    witness: CoveringWitness


@dataclass
class PRChain:
    factors: list
    steps: list
    cascade: Semiautomaton
    witness: CoveringWitness


def _proof_choice(X: Semiautomaton):
    """Block targets from the chain theorem's proof: a permutation permutes the
    complement blocks along itself; anything else resets every block to the
    lowest block containing the whole image."""
    n = X.n_states
    choice = [[0] * X.n_symbols for _ in range(n)]
    for a in range(X.n_symbols):
        t = X.symbol_transformation(a)
        if t.is_permutation():
            for i in range(n):
                choice[i][a] = t.image[i]
        else:
            img = set(t.image)
            j0 = min(j for j in range(n) if j not in img)
            for i in range(n):
                choice[i][a] = j0
    return choice


def pr_chain(A: Semiautomaton) -> PRChain:
    """Iterated cascade of permutation-reset factors covering A.

    Repeatedly applies the decomposition into all (n-1)-element state subsets
    until the continuation is itself permutation-reset; with the proof's block
    choice every factor comes out permutation-reset, and each step shrinks the
    continuation by one state, so at most n-1 factors appear.
    """
    if A.n_states < 2:
        raise InvalidInputError("chain needs at least two states")
    steps = []
    X = A
    while not is_permutation_reset(X):
        n = X.n_states
        D = Decomposition(n, [sorted(set(range(n)) - {i}) for i in range(n)])
        cover = cascade_cover_from_decomposition(X, D, _proof_choice(X))
        steps.append(
            ChainStep(X, cover.b_star, cover.c, cover.omega, cover.product, cover.witness)
        )
        X = cover.c
    factors = [st.b for st in steps] + [X]
    for B in factors:
        if not is_permutation_reset(B):
            raise InvalidInputError("chain produced a non-permutation-reset factor")
    cascade, witness = X, identity_witness(X)
    for st in reversed(steps):
        sub = substitute_right(st.product, st.b, st.c, st.omega, witness)
        cascade = sub.product
        witness = compose_coverings(sub.witness, st.witness)
    return PRChain(factors, steps, cascade, witness)


@dataclass
class GrouplikeSplit:
    b: Semiautomaton
    c_prime: Semiautomaton
    h_group: FiniteGroup
    omega: tuple
    product: Semiautomaton
    witness: CoveringWitness
    cosets: CosetPartition


def grouplike_cascade_split(G: FiniteGroup, H) -> GrouplikeSplit:
    """Cover grouplike(G) by B∘C' with B the right-coset factor and C' = grouplike(H).

    The complementary partition consists of the sets hT over the transversal T,
    so every block pair meets in the single point hg. C's inputs (coset, g) all
    act like right multiplication by the H-part of (rep·g), which identifies C
    with grouplike(H) driven through that connection.
    """
    glike = grouplike_of(G)
    cp = coset_partition(G, H)
    h_group, h_elems = subgroup_as_group(G, H)
    P = Partition(G.order, [cp.block(i) for i in range(cp.count)])
    Q = Partition(G.order, [[G.mul(h, g) for g in cp.transversal] for h in h_elems])
    cover = cascade_cover_from_partition(glike, P, q=Q)
    if cover.dont_care:
        raise InvalidInputError("coset cascade unexpectedly left cells unconstrained")

    c_prime = grouplike_of(h_group)
    h_index = {h: j for j, h in enumerate(h_elems)}
    omega = []
    for i in range(cp.count):
        row = []
        for g in range(G.order):
            x = G.mul(cp.transversal[i], g)
            rep = cp.transversal[cp.cosets[x]]
            row.append(h_index[G.mul(x, G.inv(rep))])
        omega.append(row)
    omega = tuple(tuple(r) for r in omega)

    product = cascade_product(cover.b, c_prime, omega)
    if product.delta != cover.product.delta:
        raise InvalidInputError("identified inputs disagree with the cascade cover")
    witness = CoveringWitness(product, glike, cover.witness.phi, cover.witness.xi)
    _require(verify_covering(witness), "coset split of the grouplike automaton")
    return GrouplikeSplit(cover.b, c_prime, h_group, omega, product, witness, cp)


def grouplike_to_simple_cascade(G: FiniteGroup, caps: Caps = Caps()) -> Node:
    """Cascade of simple grouplike leaves covering grouplike(G), one leaf per
    composition factor."""
    if G.order > caps.group_order:
        raise ResourceCapError(
            "group of order %d exceeds the cap of %d" % (G.order, caps.group_order)
        )
    if G.order == 1 or is_simple(G, caps.group_order):
        glike = grouplike_of(G)
        return Leaf(LEAF_GROUPLIKE, glike, identity_witness(glike), group=G)

    series = _composition_series(G, caps.group_order)
    split = grouplike_cascade_split(G, series[1])
    quotient = factor_group(G, series[1])
    if not is_simple(quotient, caps.group_order):
        raise InvalidInputError("composition factor is not simple")
    glq = grouplike_of(quotient)
    w_leaf = CoveringWitness(glq, split.b, range(quotient.order), split.cosets.cosets)
    _require(verify_covering(w_leaf), "grouplike quotient leaf")
    leaf = Leaf(LEAF_GROUPLIKE, glq, w_leaf, group=quotient)

    sub = grouplike_to_simple_cascade(split.h_group, caps)
    w_v = sub.witness
    sub_r = substitute_right(split.product, split.b, split.c_prime, split.omega, w_v)
    w_mid = compose_coverings(sub_r.witness, split.witness)
    sub_l = substitute_left(sub_r.product, split.b, sub.automaton, sub_r.omega, w_leaf)
    witness = compose_coverings(sub_l.witness, w_mid)
    return CascadeNode(leaf, sub, sub_l.omega, sub_l.product, witness)


def _refine_factor(B: Semiautomaton, caps: Caps) -> Node:
    """Tree covering one permutation-reset factor: reset automata go straight to
    two-state factors, everything else through the Pi∘R split."""
    if is_reset(B):
        return reset_to_two_state(B).tree
    try:
        split = split_permutation_reset(B, caps)
        G, w_g = cover_permutation_by_grouplike(split.pi, caps.closure_elements)
        g_tree = grouplike_to_simple_cascade(G, caps)
    except ResourceCapError as exc:
        return _raw_leaf(B, str(exc))
    w_pi = compose_coverings(g_tree.witness, w_g)

    r_tree = reset_to_two_state(split.r).tree
    if split.pi.n_states * r_tree.automaton.n_states > caps.product_states:
        return _raw_leaf(
            B,
            "split product of %d states exceeds the cap of %d"
            % (split.pi.n_states * r_tree.automaton.n_states, caps.product_states),
        )
    sub_r = substitute_right(split.product, split.pi, split.r, split.omega, r_tree.witness)
    w_mid = compose_coverings(sub_r.witness, split.witness)
    if g_tree.automaton.n_states * r_tree.automaton.n_states > caps.product_states:
        return _raw_leaf(
            B,
            "refined product of %d states exceeds the cap of %d"
            % (g_tree.automaton.n_states * r_tree.automaton.n_states, caps.product_states),
        )
    sub_l = substitute_left(sub_r.product, split.pi, r_tree.automaton, sub_r.omega, w_pi)
    witness = compose_coverings(sub_l.witness, w_mid)
    left = dataclasses.replace(g_tree, witness=w_pi)
    return CascadeNode(left, r_tree, sub_l.omega, sub_l.product, witness)


def krohn_rhodes_decompose(A: Semiautomaton, caps: Caps = Caps()) -> Node:
    """Decomposition tree whose leaves are simple grouplike or two-state reset
    semiautomata (or raw components naming the breached cap), with a root
    witness covering A."""
    if A.n_states == 1:
        return _two_state_identity_cover(A)
    chain = pr_chain(A)
    node = _refine_factor(chain.factors[-1], caps)
    for st in reversed(chain.steps):
        if st.b.n_states * node.automaton.n_states > caps.product_states:
            node = _raw_leaf(
                st.source,
                "chain product of %d states exceeds the cap of %d"
                % (st.b.n_states * node.automaton.n_states, caps.product_states),
            )
            continue
        left = _refine_factor(st.b, caps)
        sub_r = substitute_right(st.product, st.b, st.c, st.omega, node.witness)
        w_mid = compose_coverings(sub_r.witness, st.witness)
        if left.automaton.n_states * node.automaton.n_states > caps.product_states:
            node = _raw_leaf(
                st.source,
                "chain product of %d states exceeds the cap of %d"
                % (left.automaton.n_states * node.automaton.n_states, caps.product_states),
            )
            continue
        sub_l = substitute_left(sub_r.product, st.b, node.automaton, sub_r.omega, left.witness)
        witness = compose_coverings(sub_l.witness, w_mid)
        node = CascadeNode(left, node, sub_l.omega, sub_l.product, witness)
    return node


def verify_tree(tree: Node, sim_len: int = 6):
    """Verify every node witness; the root additionally gets a word-simulation
    check to the given length. Returns (ok, list of (node, result))."""
    results = []
    ok = True
    for node in iter_nodes(tree):
        res = verify_covering(node.witness)
        results.append((node, res))
        if not res:
            ok = False
    if ok and sim_len > 0:
        bad = simulation_counterexample(tree.witness, sim_len)
        if bad is not None:
            ok = False
            results.append(
                (tree, VerificationResult(False, "simulation fails on a word", bad))
            )
    return ok, results


def canonical_group_key(G: FiniteGroup):
    """(order, abelian, canonical table) for cyclic groups; the table slot falls
    back to the element-order multiset otherwise."""
    n = G.order
    for g in range(n):
        if G.element_order(g) == n:
            powers = [G.identity]
            for _ in range(n - 1):
                powers.append(G.mul(powers[-1], g))
            rank = {x: i for i, x in enumerate(powers)}
            table = tuple(
                tuple(rank[G.mul(powers[i], powers[j])] for j in range(n))
                for i in range(n)
            )
            return (n, True, table)
    orders = tuple(sorted(G.element_order(x) for x in range(n)))
    return (n, G.is_abelian(), orders)


def leaf_description(leaf: Leaf) -> str:
    if leaf.kind == LEAF_GROUPLIKE:
        flavor = "abelian" if leaf.group.is_abelian() else "nonabelian"
        return "simple grouplike: order %d, %s" % (leaf.group.order, flavor)
    if leaf.kind == LEAF_RESET:
        return "two-state reset"
    return "raw component: %s" % (leaf.reason or "unrefined")


def summarize_leaves(tree: Node):
    """Leaf descriptions with counts; isomorphic grouplike leaves are merged."""
    counts = {}
    order = []
    for leaf in leaves(tree):
        if leaf.kind == LEAF_GROUPLIKE:
            key = (LEAF_GROUPLIKE, canonical_group_key(leaf.group))
        elif leaf.kind == LEAF_RESET:
            key = (LEAF_RESET,)
        else:
            key = (LEAF_RAW, leaf.reason)
        if key not in counts:
            counts[key] = [leaf_description(leaf), 0]
            order.append(key)
        counts[key][1] += 1
    return [(counts[k][0], counts[k][1]) for k in order]
