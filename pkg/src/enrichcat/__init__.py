"""Enriched categories over FinVect_p and chain complexes, with a Gabriel-Popescu harness."""

from .chain import ChainComplex, ChainCosmos, ChainMap, disk, shift, sphere
from .enriched import (
    FiniteVCategory,
    VFunctor,
    algebra_category,
    check_axioms,
    dual_numbers,
    free_vcategory,
    opposite,
    unit_vcategory,
)
from .finvect import FinVect
from .harness import HarnessReport, Verdict, gabriel_popescu_verify
from .limits import coend_of, end_of, weighted_colimit, weighted_limit
from .linalg import FpMatrix
from .presheaf import nerve_realization, presheaf_category, yoneda, yoneda_iso

__all__ = [
    "ChainComplex", "ChainCosmos", "ChainMap", "FinVect", "FiniteVCategory", "FpMatrix", "HarnessReport",
    "VFunctor", "Verdict", "algebra_category", "check_axioms", "coend_of", "disk", "dual_numbers", "end_of",
    "free_vcategory", "gabriel_popescu_verify", "nerve_realization", "opposite", "presheaf_category", "shift",
    "sphere", "unit_vcategory", "weighted_colimit", "weighted_limit", "yoneda", "yoneda_iso",
]
