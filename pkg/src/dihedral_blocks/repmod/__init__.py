"""Module engine: permutation modules, meataxe, summands, Loewy series, Brauer quotients, transport."""

from .algebra import DEFAULT_SEED, MeataxeFailure, hom_space, make_rng, seed_value
from .brauer import (AuditEntry, BrauerAudit, BrauerQuotient, NotPSubgroup, brauer_audit,
                     brauer_quotient, brauer_quotient_perm, centralizer_of_subgroup, fixed_points,
                     maximal_subgroups, relative_trace)
from .meataxe import (CapExceeded, ChopResult, FieldTooSmall, SimpleLibrary, in_principal_block,
                      is_absolutely_simple, is_simple, library_for, meataxe_chop, principal_block_simples)
from .module import (GModule, ModuleError, NotASubgroup, PermModule, WrongFamily, borel_subgroup,
                     perm_module, regular_module, trivial_module)
from .series import (IncompleteLibrary, LoewySeries, dual_series, loewy_series, relative_syzygy,
                     socle_series)
from .summands import (ScottError, ScottModule, Summand, decompose, divides_induced_trivial, end_algebra,
                       find_isomorphism, hom, indecomposable_summands, is_indecomposable, is_isomorphic,
                       is_projective, scott, scott_divides, strip_projectives, sylow2_subgroup)
from .transport import SideMismatch, TransportResult, tensor_over_group, transport_simple

__all__ = [
    "DEFAULT_SEED", "MeataxeFailure", "hom_space", "make_rng", "seed_value",
    "AuditEntry", "BrauerAudit", "BrauerQuotient", "NotPSubgroup", "brauer_audit", "brauer_quotient",
    "brauer_quotient_perm", "centralizer_of_subgroup", "fixed_points", "maximal_subgroups", "relative_trace",
    "CapExceeded", "ChopResult", "FieldTooSmall", "SimpleLibrary", "in_principal_block",
    "is_absolutely_simple", "is_simple", "library_for", "meataxe_chop", "principal_block_simples",
    "GModule", "ModuleError", "NotASubgroup", "PermModule", "WrongFamily", "borel_subgroup",
    "perm_module", "regular_module", "trivial_module",
    "IncompleteLibrary", "LoewySeries", "dual_series", "loewy_series", "relative_syzygy", "socle_series",
    "ScottError", "ScottModule", "Summand", "decompose", "divides_induced_trivial", "end_algebra", "find_isomorphism", "hom",
    "indecomposable_summands", "is_indecomposable", "is_isomorphic", "is_projective", "scott",
    "scott_divides", "strip_projectives", "sylow2_subgroup",
    "SideMismatch", "TransportResult", "tensor_over_group", "transport_simple",
]
