"""Pure-Python kernels; same signatures as the compiled backend."""


def compose(f, g):
    """Left-to-right composition of point maps: out[i] = g[f[i]]."""
    return [g[x] for x in f]


def build_cascade_delta(delta_a, na, nsym_a, delta_b, nb, nsym_b, omega):
    """Flat transition table of a cascade product.

    delta_a, delta_b, omega are flat row-major tables; the result is flat over
    product states (i * nb + j) and the first factor's alphabet.
    """
    out = [0] * (na * nb * nsym_a)
    for i in range(na):
        arow = i * nsym_a
        for a in range(nsym_a):
            ia = delta_a[arow + a]
            sb = omega[arow + a]
            base = ia * nb
            for j in range(nb):
                out[(i * nb + j) * nsym_a + a] = base + delta_b[j * nsym_b + sb]
    return out


def advance_states(delta, nsym, states, sym):
    """Apply one input symbol to every state in the list."""
    return [delta[s * nsym + sym] for s in states]


def count_phi_mismatch(phi, upper_states, lower_states):
    """Index of the first k with phi[upper_states[k]] != lower_states[k], or -1."""
    for k in range(len(upper_states)):
        if phi[upper_states[k]] != lower_states[k]:
            return k
    return -1
