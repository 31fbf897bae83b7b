"""Left orders on finitely presented groups.

Word problem certificates, the semigroup criterion, dynamic realization on the
line, and sign selection for parametrized germs.
"""
from .abelian import IntMatrix, abelianization_matrix, first_betti, smith_normal_form
from .criterion import NonLOCertificate, Undetermined, semigroup_criterion
from .germs import ParamGerm, compose_param_germ, eval_param_germ, invert_param_germ
from .obstruction import ObstructionVerdict, stability_obstruction
from .orders import Cmp, LexOracle, MagnusOracle, lex_order_compare, magnus_compare
from .realization import (
    DynamicRealization, build_embedding_t, build_pl_action, check_realization, realize,
)
from .pl import PLMap, compress_to_negative_ray, phi
from .signs import GermSignSelector, find_nontriviality_witness, germ_compare, select_signs
from .textio import parse_presentation, serialize_presentation
from .words import Presentation, Word, free_reduce
from .wordproblem import Budget, Verdict, enumerate_ball, identity_status

__version__ = "0.1.0"

__all__ = [
    "Budget", "Cmp", "DynamicRealization", "GermSignSelector", "IntMatrix", "LexOracle", "MagnusOracle",
    "NonLOCertificate", "ObstructionVerdict", "PLMap", "ParamGerm", "Presentation", "Undetermined", "Verdict",
    "Word", "abelianization_matrix", "build_embedding_t", "build_pl_action", "check_realization",
    "compose_param_germ", "compress_to_negative_ray", "enumerate_ball", "eval_param_germ",
    "find_nontriviality_witness", "first_betti", "free_reduce", "germ_compare", "identity_status",
    "invert_param_germ", "lex_order_compare", "magnus_compare", "parse_presentation", "phi", "realize",
    "select_signs", "semigroup_criterion", "serialize_presentation", "smith_normal_form", "stability_obstruction",
]
