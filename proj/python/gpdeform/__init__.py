"""Exact homological workbench for bound quiver algebras.

Thin convenience layer over the compiled extension: JSON-string results are
decoded into dictionaries here.
"""

import json as _json

from gpdeform._core import (  # noqa: F401
    Algebra,
    Bimodule,
    Complex,
    Module,
    __version__,
    check_singular_equivalence,
    decompose,
    enumerate_deformation_classes,
    ext_dim,
    gorenstein_projective,
    hom_derived_dim,
    hom_dim,
    hom_singularity_dim,
    is_isomorphic,
    is_perfect,
    is_projective_module,
    stable_end_dim,
    tangent_dim,
    transport,
    verify_transport_invariance,
)
from gpdeform import _core as _impl


def versal(module, order=4):
    """Truncated versal presentation of the deformation ring, as a dict."""
    return _json.loads(_impl.versal(module, order))


def nakayama(characteristic, n, c):
    """Cyclic Nakayama algebra with the given admissible sequence."""
    return Algebra.nakayama(characteristic, n, c)


def string_module(algebra, word, at=-1):
    """Direct string module for a word in written order, e.g. ["g3", "g2"]."""
    return Module.string(algebra, word, at)
