"""Katalan functions, K-k-Schur expansions and their alternating signs."""
from __future__ import annotations

from .bases import (BasisCache, Expansion, ExpansionError, NonIntegral, NonUnique, OutsideSpan,
                    alternating_check, closed_kschur, dual_grothendieck, expand_family,
                    expand_in_kkschur, kkschur, weighted_kkschur)
from .functions import KatalanSpec, MirrorOutcome, apply_lowering, evaluate, katalan, mirror_apply, relk_split
from .partitions import enumerate_kbounded, in_hat_class, is_kbounded, parse_partition
from .recursion import (HypothesisViolation, SignLedgerError, VerifyReport, WeightedTerm,
                        closed_recursive, expand_recursive, verify, weight_step)
from .rootideal import RootIdeal, delta_k, weighted_marks
from .symfunc import SymFunc, g_of_vector, h, k_hom

__version__ = "0.1.0"
