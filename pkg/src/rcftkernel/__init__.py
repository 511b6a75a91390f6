"""Exact Galois action and kernel computations for RCFT modular data."""
from .cyclotomic import CycNumber, embed, frobenius, is_in_subfield, sin_pi, sqrt_int, to_complex
from .errors import (AxiomViolation, BudgetExceeded, InvalidKacData, NonIntegerFusion, NotCoprime,
                     NotDiagonal, NotMonomial, NotUnimodular, OrderMismatch, RCFTError, SchemaError)
from .galois import MonomialMatrix, check_gtcom, extract_g, g_via_closed_form
from .kernel import (KernelReport, conductor_bound_naive, is_in_kernel, kernel_consequences,
                     kernel_elements, kernel_image)
from .lambdas import ZCache, extract_z, lambda_matrix, lemma_suite, r_star
from .matrix import PhaseDiagonal
from .modular_data import (ModularData, check_axioms, fusion, load, minimal_model, n_zero,
                           order_of_t, ratio_e, save, validate_modular_data)
from .sl2 import SL2NMatrix, SL2ZMatrix, GeneratorWord, check_gal2, decompose, lift, rep, tau

__version__ = "0.1.0"

__all__ = [
    "CycNumber",
    "embed",
    "frobenius",
    "is_in_subfield",
    "sin_pi",
    "sqrt_int",
    "to_complex",
    "AxiomViolation",
    "BudgetExceeded",
    "InvalidKacData",
    "NonIntegerFusion",
    "NotCoprime",
    "NotDiagonal",
    "NotMonomial",
    "NotUnimodular",
    "OrderMismatch",
    "RCFTError",
    "SchemaError",
    "MonomialMatrix",
    "check_gtcom",
    "extract_g",
    "g_via_closed_form",
    "KernelReport",
    "conductor_bound_naive",
    "is_in_kernel",
    "kernel_consequences",
    "kernel_elements",
    "kernel_image",
    "ZCache",
    "extract_z",
    "lambda_matrix",
    "lemma_suite",
    "r_star",
    "PhaseDiagonal",
    "ModularData",
    "check_axioms",
    "fusion",
    "load",
    "minimal_model",
    "n_zero",
    "order_of_t",
    "ratio_e",
    "save",
    "validate_modular_data",
    "SL2NMatrix",
    "SL2ZMatrix",
    "GeneratorWord",
    "check_gal2",
    "decompose",
    "lift",
    "rep",
    "tau",
]
