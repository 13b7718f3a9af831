"""Exact-arithmetic calculus and cohomology for almost complex structures
on coordinate tori and nilpotent Lie algebra frames.

The package computes, with no floating point anywhere in the main path:

* the algebraic and Lie-type derivations iota_K and L_K of vector-valued
  forms, the Nijenhuis tensor, and the twist dc of the exterior derivative;
* three cohomologies attached to (M, J) -- the kernels of L_J and L_N under
  d, and the kernel of L_N under L_J -- together with de Rham, on invariant
  Lie-algebra complexes (exact) and Fourier-truncated torus complexes
  (windowed, with truncation semantics reported);
* the quotient measuring the d L_J lemma, the comparison maps to de Rham and
  Dolbeault cohomology, and the degree-by-degree equivalence between them.
"""

from .coeffring import GaussianRational, Rat, TrigPoly, rat, trig_eval, trig_mul, trig_partial
from .frames import (
    Form,
    Model,
    VectorField,
    VectorForm,
    ext_d,
    interior_vector,
    validate_model,
    vf_bracket,
    wedge,
)
from .derivations import (
    dc,
    form_J_action,
    identity_suite,
    iota_vform,
    jn_twist_tensor,
    lie_vform,
    nijenhuis,
)
from .linalg import (
    ExactMatrix,
    Subspace,
    image_basis,
    kernel_basis,
    quotient_dim,
    rref,
    subspace_intersect,
)
from .models import CATALOG, Structure, builtin

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "ExactMatrix",
    "Form",
    "GaussianRational",
    "Model",
    "Rat",
    "Structure",
    "Subspace",
    "TrigPoly",
    "VectorField",
    "VectorForm",
    "builtin",
    "dc",
    "ext_d",
    "form_J_action",
    "identity_suite",
    "image_basis",
    "interior_vector",
    "iota_vform",
    "jn_twist_tensor",
    "kernel_basis",
    "lie_vform",
    "nijenhuis",
    "quotient_dim",
    "rat",
    "rref",
    "subspace_intersect",
    "trig_eval",
    "trig_mul",
    "trig_partial",
    "validate_model",
    "vf_bracket",
    "wedge",
    "__version__",
]
