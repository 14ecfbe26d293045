"""String algebras over regular local rings built from a quiver with zero-relations."""

from .algebra import (AlgebraElement, DimensionMismatch, IdealPresentation, TransportMismatch,
                      default_caps, ideal_generators, ideal_membership, multiply, one_sided_transport,
                      reduce, sigma, z_only_ideal)
from .coefficients import Coefficient, CoefficientModel
from .dsl import SpecError, SpecFile, parse_element, parse_spec, serialize
from .instance import Instance, build, load
from .primitives import (NervePartition, NonSpecialError, PrimitiveCycleSet, enumerate_primitive_cycles,
                         nerve_partition, power_admissible, primitive_cycles_at)
from .quiver import (CompositionError, Path, Quiver, QuiverError, compose, is_subpath, proper_power_root,
                     rotations, traversed_vertices)
from .relations import SpecialPairData, ZSet, check_biserial, check_special_pair, is_z_admissible
from .report import PeirceReport, peirce_report
from .verifier import (VerificationReport, bounded_below_constant, check_arrow_direct, check_bounded_above,
                       truncation_dimension_check, verify_string_algebra)

__version__ = "0.1.0"
