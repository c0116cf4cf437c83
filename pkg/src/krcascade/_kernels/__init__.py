"""Kernel backend selection: compiled extension when present, pure Python otherwise."""

try:
    from . import _fast as _impl

    BACKEND = "compiled"
except ImportError:  # no compiler at install time, or source checkout
    from . import _pure as _impl

    BACKEND = "pure"

compose = _impl.compose
build_cascade_delta = _impl.build_cascade_delta
advance_states = _impl.advance_states
count_phi_mismatch = _impl.count_phi_mismatch
