"""Exact computations on Boolean functions, their Möbius and Fourier spectra,
non-adaptive query models and the one-way communication complexity of lifted
(composed) functions."""
from ._accel import backend
from .bfcore import (BooleanFunction, ComposedFunction, GadgetSpec, addr, and_, build_named,
                     compose, constant, depends_on_all, evaluate, from_callable, gadget_addr,
                     gadget_and, gadget_ip, gadget_xor, ip, is_symmetric, maj, mask_to_subset, nor,
                     omb, ombp, or_, parse_gadget, subset_to_mask, switch_value, sym,
                     symmetric_spectrum, thr, xor)
from .errors import (BooliftError, CapExceeded, NoSmallPlan, PreconditionError,
                     SpecSyntaxError, UndefinedInput)
from .grammar import FunctionSpec, parse_spec, render_spec
from .patterns import (PartnerSet, partner, pattern_complexity, pattern_complexity_hashed,
                       pattern_growth_trace, pattern_of)
from .querymodels import (SetFamily, SymmetricNaadtPlan, alternating_number, naadt_exact,
                          napdt_exact, nonadaptive_dt, separating_check, separating_family,
                          symmetric_naadt, symmetric_naadt_eval, symmetric_naadt_eval_all)
from .transforms import (FourierSpectrum, MobiusSpectrum, fourier_sparsity, fourier_spectrum,
                         mobius_sparsity, mobius_spectrum, mobius_support, titsworth_check)

__version__ = "0.1.0"
