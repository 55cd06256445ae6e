"""Period-p sequence families with low ambiguity and flat spectra, built
from multiplicative and additive characters of F_p, with the Weil
representation machinery used to cross-check them."""

from .analysis import (
    AmbiguitySurface,
    PairMode,
    VerificationReport,
    ambiguity_surface,
    autocorrelation,
    compare_families,
    crosscorrelation,
    spectrum_max,
    verify_family,
)
from .families import (
    FamilyDescriptor,
    alltop_cubic_sequence,
    chu_sequence,
    extended_split_family,
    heisenberg_sequence,
    omega_family,
    omega_sequence,
    split_oscillator_family,
    split_oscillator_sequence,
)
from .field import PrimeField, dlog, inv, legendre, make_field
from .seqcore import (
    Sequence,
    UnitaryOp,
    chirp,
    fourier,
    heisenberg,
    inner_product,
    is_phase_shift_equiv,
    is_scalar_multiple,
    is_time_shift_equiv,
    phase_shift,
    scale,
    time_shift,
)

__version__ = "0.1.0"
