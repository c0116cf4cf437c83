"""Semiautomata, word actions, transition monoids, products, covering witnesses.

Covering direction is a single normal form everywhere: the witness's upper
automaton covers its lower one (B >= A), with phi a partial surjection from
upper states onto lower states and xi mapping lower symbols into upper ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .algebra import CLOSURE_CAP, Transformation, clamp_label, closure_generate
from .errors import InvalidInputError, WitnessError


def _unique_labels(candidates):
    seen = {}
    out = []
    for lab in candidates:
        if lab in seen:
            seen[lab] += 1
            lab = "%s#%d" % (lab, seen[lab])
        seen.setdefault(lab, 0)
        out.append(lab)
    return out


class Semiautomaton:
    """States, alphabet, and a total transition table delta[state][symbol]."""

    def __init__(self, state_labels, symbol_labels, delta):
        self.state_labels = tuple(str(x) for x in state_labels)
        self.symbol_labels = tuple(str(x) for x in symbol_labels)
        self.delta = tuple(tuple(int(x) for x in row) for row in delta)
        n, m = len(self.state_labels), len(self.symbol_labels)
        if n < 1:
            raise InvalidInputError("need at least one state")
        if len(set(self.state_labels)) != n:
            raise InvalidInputError("duplicate state label")
        if len(set(self.symbol_labels)) != m:
            raise InvalidInputError("duplicate symbol label")
        if len(self.delta) != n:
            raise InvalidInputError("need one transition row per state")
        for row in self.delta:
            if len(row) != m:
                raise InvalidInputError("transition row length differs from alphabet size")
            for x in row:
                if not 0 <= x < n:
                    raise InvalidInputError("transition target %d out of range" % x)
        self._state_index = {lab: i for i, lab in enumerate(self.state_labels)}
        self._symbol_index = {lab: j for j, lab in enumerate(self.symbol_labels)}
        self._flat = [x for row in self.delta for x in row]

    @classmethod
    def from_columns(cls, state_labels, symbol_labels, columns):
        """Build from per-symbol images: columns[j][s] = s under symbol j."""
        n = len(state_labels)
        for col in columns:
            if len(col) != n:
                raise InvalidInputError("column length differs from state count")
        delta = [[col[s] for col in columns] for s in range(n)]
        return cls(state_labels, symbol_labels, delta)

    @property
    def n_states(self) -> int:
        return len(self.state_labels)

    @property
    def n_symbols(self) -> int:
        return len(self.symbol_labels)

    def state_index(self, label) -> int:
        try:
            return self._state_index[label]
        except KeyError:
            raise InvalidInputError("unknown state label %r" % (label,)) from None

    def symbol_index(self, label) -> int:
        try:
            return self._symbol_index[label]
        except KeyError:
            raise InvalidInputError("unknown symbol %r" % (label,)) from None

    def step(self, s: int, a: int) -> int:
        return self.delta[s][a]

    def symbol_transformation(self, a: int) -> Transformation:
        return Transformation(tuple(row[a] for row in self.delta))

    def transformations(self):
        return [self.symbol_transformation(a) for a in range(self.n_symbols)]

    def word_indices(self, w):
        """Normalize a word to symbol indices; strings are read per character."""
        if isinstance(w, str):
            return [self.symbol_index(ch) for ch in w]
        out = []
        for item in w:
            if isinstance(item, str):
                out.append(self.symbol_index(item))
            else:
                item = int(item)
                if not 0 <= item < self.n_symbols:
                    raise InvalidInputError("symbol index %d out of range" % item)
                out.append(item)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Semiautomaton)
            and self.state_labels == other.state_labels
            and self.symbol_labels == other.symbol_labels
            and self.delta == other.delta
        )

    def __repr__(self):
        return "Semiautomaton(%d states, %d symbols)" % (self.n_states, self.n_symbols)


def run(A: Semiautomaton, s: int, w) -> int:
    """delta*: the state reached from s after reading w."""
    if not 0 <= s < A.n_states:
        raise InvalidInputError("state index %d out of range" % s)
    for a in A.word_indices(w):
        s = A.delta[s][a]
    return s


def word_transformation(A: Semiautomaton, w) -> Transformation:
    """tau_w, composed letterwise left to right; tau of the empty word is id."""
    t = Transformation.identity(A.n_states)
    for a in A.word_indices(w):
        t = t.compose(A.symbol_transformation(a))
    return t


def transition_monoid(A: Semiautomaton, cap: int = CLOSURE_CAP):
    """T(A): the monoid generated by the per-symbol transformations."""
    return closure_generate(
        A.transformations(),
        domain_size=A.n_states,
        cap=cap,
        symbol_labels=A.symbol_labels,
    )


def _pair_state_labels(A: Semiautomaton, B: Semiautomaton):
    nb = B.n_states
    return _unique_labels(
        clamp_label("(%s,%s)" % (la, lb), "q%d" % (i * nb + j))
        for i, la in enumerate(A.state_labels)
        for j, lb in enumerate(B.state_labels)
    )


def direct_product(A: Semiautomaton, B: Semiautomaton) -> Semiautomaton:
    """Parallel composition on a shared alphabet; state (i,j) flattens to i*|S^B|+j."""
    if A.symbol_labels != B.symbol_labels:
        raise InvalidInputError("direct product needs identical alphabets")
    nb = B.n_states
    delta = []
    for i in range(A.n_states):
        for j in range(nb):
            delta.append(
                [A.delta[i][a] * nb + B.delta[j][a] for a in range(A.n_symbols)]
            )
    return Semiautomaton(_pair_state_labels(A, B), A.symbol_labels, delta)


def _check_omega(A: Semiautomaton, B: Semiautomaton, omega):
    omega = tuple(tuple(int(x) for x in row) for row in omega)
    if len(omega) != A.n_states:
        raise InvalidInputError("connection mapping needs one row per first-factor state")
    for row in omega:
        if len(row) != A.n_symbols:
            raise InvalidInputError("connection mapping row length differs from alphabet")
        for x in row:
            if not 0 <= x < B.n_symbols:
                raise InvalidInputError(
                    "connection mapping image %d outside the second factor's alphabet" % x
                )
    return omega


def cascade_product(A: Semiautomaton, B: Semiautomaton, omega) -> Semiautomaton:
    """A driving B: (s,t)·a = (s·a, t·omega(s,a)), over A's alphabet."""
    omega = _check_omega(A, B, omega)
    nb = B.n_states
    delta = []
    for i in range(A.n_states):
        for j in range(nb):
            delta.append(
                [
                    A.delta[i][a] * nb + B.delta[j][omega[i][a]]
                    for a in range(A.n_symbols)
                ]
            )
    return Semiautomaton(_pair_state_labels(A, B), A.symbol_labels, delta)


@dataclass
class VerificationResult:
    ok: bool
    reason: Optional[str] = None
    site: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


class CoveringWitness:
    """Proof object for upper >= lower.

    phi: per upper state, a lower-state index or None (None = outside the domain).
    xi: per lower symbol, an upper symbol index.
    Construction rejects witnesses whose domain is empty, not surjective, or not
    closed under the xi-image transitions; the per-symbol law itself is checked
    by verify_covering.
    """

    def __init__(self, upper: Semiautomaton, lower: Semiautomaton, phi, xi, check=True):
        self.upper = upper
        self.lower = lower
        self.phi = tuple(None if v is None else int(v) for v in phi)
        self.xi = tuple(int(x) for x in xi)
        if len(self.phi) != upper.n_states:
            raise WitnessError("phi needs one entry per upper state")
        if len(self.xi) != lower.n_symbols:
            raise WitnessError("xi needs one entry per lower symbol")
        for v in self.phi:
            if v is not None and not 0 <= v < lower.n_states:
                raise WitnessError("phi image %d out of range" % v)
        for x in self.xi:
            if not 0 <= x < upper.n_symbols:
                raise WitnessError("xi image %d out of range" % x)
        self.dom = tuple(s for s, v in enumerate(self.phi) if v is not None)
        if check:
            if not self.dom:
                raise WitnessError("phi has an empty domain")
            covered = {self.phi[s] for s in self.dom}
            if covered != set(range(lower.n_states)):
                missing = min(set(range(lower.n_states)) - covered)
                raise WitnessError(
                    "phi is not surjective: lower state %s has no preimage"
                    % lower.state_labels[missing]
                )
            for s in self.dom:
                for a in range(lower.n_symbols):
                    if self.phi[upper.delta[s][self.xi[a]]] is None:
                        raise WitnessError(
                            "domain of phi is not closed: state %s leaves it under %s"
                            % (upper.state_labels[s], lower.symbol_labels[a])
                        )

    def __repr__(self):
        return "CoveringWitness(%d of %d upper states onto %d lower states)" % (
            len(self.dom),
            self.upper.n_states,
            self.lower.n_states,
        )


class HomImageWitness:
    """Proof object for a homomorphic image: total phi and xi, both surjective."""

    def __init__(self, source: Semiautomaton, target: Semiautomaton, phi, xi, check=True):
        self.source = source
        self.target = target
        self.phi = tuple(int(v) for v in phi)
        self.xi = tuple(int(x) for x in xi)
        if len(self.phi) != source.n_states:
            raise WitnessError("phi needs one entry per source state")
        if len(self.xi) != source.n_symbols:
            raise WitnessError("xi needs one entry per source symbol")
        for v in self.phi:
            if not 0 <= v < target.n_states:
                raise WitnessError("phi image %d out of range" % v)
        for x in self.xi:
            if not 0 <= x < target.n_symbols:
                raise WitnessError("xi image %d out of range" % x)
        if check:
            if set(self.phi) != set(range(target.n_states)):
                raise WitnessError("phi is not surjective onto the target states")
            if set(self.xi) != set(range(target.n_symbols)):
                raise WitnessError("xi is not surjective onto the target alphabet")


def verify_covering(w: CoveringWitness) -> VerificationResult:
    """Exhaustive check of surjectivity, domain closure, and the per-symbol law."""
    upper, lower = w.upper, w.lower
    if not w.dom:
        return VerificationResult(False, "phi has an empty domain")
    covered = {w.phi[s] for s in w.dom}
    if covered != set(range(lower.n_states)):
        missing = min(set(range(lower.n_states)) - covered)
        return VerificationResult(
            False, "phi misses lower state %s" % lower.state_labels[missing]
        )
    for s in w.dom:
        for a in range(lower.n_symbols):
            u = upper.delta[s][w.xi[a]]
            if w.phi[u] is None:
                return VerificationResult(
                    False,
                    "domain not closed under symbol %s" % lower.symbol_labels[a],
                    (s, a),
                )
            if w.phi[u] != lower.delta[w.phi[s]][a]:
                return VerificationResult(
                    False,
                    "covering law fails at state %s under symbol %s"
                    % (upper.state_labels[s], lower.symbol_labels[a]),
                    (s, a),
                )
    return VerificationResult(True)


def verify_hom_image(w: HomImageWitness) -> VerificationResult:
    src, tgt = w.source, w.target
    if set(w.phi) != set(range(tgt.n_states)):
        return VerificationResult(False, "phi is not surjective")
    if set(w.xi) != set(range(tgt.n_symbols)):
        return VerificationResult(False, "xi is not surjective")
    for s in range(src.n_states):
        for a in range(src.n_symbols):
            if w.phi[src.delta[s][a]] != tgt.delta[w.phi[s]][w.xi[a]]:
                return VerificationResult(
                    False,
                    "homomorphism law fails at state %s under symbol %s"
                    % (src.state_labels[s], src.symbol_labels[a]),
                    (s, a),
                )
    return VerificationResult(True)


def identity_witness(A: Semiautomaton) -> CoveringWitness:
    return CoveringWitness(A, A, range(A.n_states), range(A.n_symbols))


def compose_coverings(w1: CoveringWitness, w2: CoveringWitness) -> CoveringWitness:
    """From C >= B and B >= A, the transitive witness C >= A."""
    if w1.lower != w2.upper:
        raise WitnessError("middle automata of the two witnesses differ")
    r1, r2 = verify_covering(w1), verify_covering(w2)
    if not r1:
        raise WitnessError("first witness does not verify: %s" % r1.reason)
    if not r2:
        raise WitnessError("second witness does not verify: %s" % r2.reason)
    phi = [
        None if v is None else w2.phi[v]
        for v in w1.phi
    ]
    xi = [w1.xi[x] for x in w2.xi]
    return CoveringWitness(w1.upper, w2.lower, phi, xi)


def simulation_counterexample(w: CoveringWitness, max_len: int):
    """A pair (upper start state, word) violating phi(s·xi(x)) = phi(s)·x, or None.

    Walks the prefix tree of all lower words up to max_len, advancing every
    domain state in lockstep.
    """
    upper, lower = w.upper, w.lower
    dom = list(w.dom)
    if not dom:
        return None
    phi = [-1 if v is None else v for v in w.phi]
    uflat, lflat = upper._flat, lower._flat
    um, lm = upper.n_symbols, lower.n_symbols

    def walk(us, ls, word):
        for a in range(lm):
            nus = _kernels.advance_states(uflat, um, us, w.xi[a])
            nls = _kernels.advance_states(lflat, lm, ls, a)
            k = _kernels.count_phi_mismatch(phi, nus, nls)
            if k >= 0:
                return (dom[k], word + (a,))
            if len(word) + 1 < max_len:
                bad = walk(nus, nls, word + (a,))
                if bad is not None:
                    return bad
        return None

    if max_len <= 0:
        return None
    return walk(dom, [w.phi[s] for s in dom], ())


def covering_implies_simulation(w: CoveringWitness, max_len: int) -> bool:
    """Whether phi(s·xi(x)) = phi(s)·x holds for every domain state and word."""
    if not verify_covering(w):
        return False
    return simulation_counterexample(w, max_len) is None


@dataclass
class RightSubstitution:
    product: Semiautomaton
    omega: tuple
    witness: CoveringWitness


def substitute_right(product_ac, A, C, omega, w_v: CoveringWitness) -> RightSubstitution:
    """Replace the second cascade factor: from V >= C, build A∘V >= A∘C.

    The new connection routes through the alphabet map of the inner witness:
    omega'(s,a) = xi_V(omega(s,a)); phi pairs (s,v) with (s, phi_V(v)).
    """
    omega = _check_omega(A, C, omega)
    if w_v.lower != C:
        raise WitnessError("inner witness does not cover the second factor")
    if product_ac.n_states != A.n_states * C.n_states:
        raise InvalidInputError("product automaton does not match the given factors")
    V = w_v.upper
    omega2 = [
        [w_v.xi[omega[i][a]] for a in range(A.n_symbols)]
        for i in range(A.n_states)
    ]
    product_av = cascade_product(A, V, omega2)
    nc, nv = C.n_states, V.n_states
    phi = []
    for i in range(A.n_states):
        for v in range(nv):
            pv = w_v.phi[v]
            phi.append(None if pv is None else i * nc + pv)
    witness = CoveringWitness(product_av, product_ac, phi, range(A.n_symbols))
    return RightSubstitution(product_av, tuple(tuple(r) for r in omega2), witness)


@dataclass
class LeftSubstitution:
    u_prime: Semiautomaton
    product: Semiautomaton
    omega: tuple
    witness: CoveringWitness


def substitute_left(product_ac, A, C, omega, w_u: CoveringWitness) -> LeftSubstitution:
    """Replace the first cascade factor: from U >= A, build U'∘C >= A∘C.

    U' is U with its alphabet pulled back along xi_U, so the product keeps A's
    alphabet even when xi_U is not injective. The connection reads U's state
    through phi_U; rows outside dom(phi_U) are unreachable from the witness
    domain and reuse row 0.
    """
    omega = _check_omega(A, C, omega)
    if w_u.lower != A:
        raise WitnessError("inner witness does not cover the first factor")
    if product_ac.n_states != A.n_states * C.n_states:
        raise InvalidInputError("product automaton does not match the given factors")
    U = w_u.upper
    u_prime = Semiautomaton(
        U.state_labels,
        A.symbol_labels,
        [[U.delta[u][w_u.xi[a]] for a in range(A.n_symbols)] for u in range(U.n_states)],
    )
    omega2 = [
        [omega[w_u.phi[u] if w_u.phi[u] is not None else 0][a] for a in range(A.n_symbols)]
        for u in range(U.n_states)
    ]
    product_uc = cascade_product(u_prime, C, omega2)
    nc = C.n_states
    phi = []
    for u in range(U.n_states):
        pu = w_u.phi[u]
        for c in range(nc):
            phi.append(None if pu is None else pu * nc + c)
    witness = CoveringWitness(product_uc, product_ac, phi, range(A.n_symbols))
    return LeftSubstitution(u_prime, product_uc, tuple(tuple(r) for r in omega2), witness)
