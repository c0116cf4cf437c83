# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled kernels for the hot table loops; mirrors _pure exactly."""


def compose(f, g):
    """Left-to-right composition of point maps: out[i] = g[f[i]]."""
    cdef Py_ssize_t n = len(f)
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = g[f[i]]
    return out


def build_cascade_delta(list delta_a, Py_ssize_t na, Py_ssize_t nsym_a,
                        list delta_b, Py_ssize_t nb, Py_ssize_t nsym_b,
                        list omega):
    """Flat transition table of a cascade product (see _pure)."""
    cdef list out = [0] * (na * nb * nsym_a)
    cdef Py_ssize_t i, a, j, arow, ia, sb, base
    for i in range(na):
        arow = i * nsym_a
        for a in range(nsym_a):
            ia = <Py_ssize_t> delta_a[arow + a]
            sb = <Py_ssize_t> omega[arow + a]
            base = ia * nb
            for j in range(nb):
                out[(i * nb + j) * nsym_a + a] = base + <Py_ssize_t> delta_b[j * nsym_b + sb]
    return out


def advance_states(list delta, Py_ssize_t nsym, list states, Py_ssize_t sym):
    """Apply one input symbol to every state in the list."""
    cdef Py_ssize_t n = len(states)
    cdef list out = [0] * n
    cdef Py_ssize_t k
    for k in range(n):
        out[k] = delta[(<Py_ssize_t> states[k]) * nsym + sym]
    return out


def count_phi_mismatch(list phi, list upper_states, list lower_states):
    """Index of the first k with phi[upper_states[k]] != lower_states[k], or -1."""
    cdef Py_ssize_t n = len(upper_states)
    cdef Py_ssize_t k
    for k in range(n):
        if phi[<Py_ssize_t> upper_states[k]] != lower_states[k]:
            return k
    return -1
