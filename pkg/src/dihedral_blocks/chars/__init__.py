"""Ordinary character theory: cyclotomics, Dixon tables, principal blocks, generalised decomposition matrices."""

from .cyclotomic import Cyclotomic, CyclotomicError, add, conj, cyc, equals, mul, parse
from .gendec import (CASES, DELTA_CONSTANTS, FUSION_OF_CASE, CaseParameterMismatch, Column, DeltaSigns,
                     GenDecMatrix, NoMatchingRelabelling, SignAmbiguity, VerificationReport, WrongFusionCase,
                     delta_signs, gendec_build, gendec_verify, reference_degrees)
from .table import (CharacterTable, ClassInfo, GroupTooLarge, NoSuitablePrime, NonIntegralCentralCharacter,
                    PrincipalBlock, dixon_table, lifting_prime, principal_block)

__all__ = [
    "Cyclotomic", "CyclotomicError", "add", "conj", "cyc", "equals", "mul", "parse",
    "CASES", "DELTA_CONSTANTS", "FUSION_OF_CASE", "CaseParameterMismatch", "Column", "DeltaSigns",
    "GenDecMatrix", "NoMatchingRelabelling", "SignAmbiguity", "VerificationReport", "WrongFusionCase",
    "delta_signs", "gendec_build", "gendec_verify", "reference_degrees",
    "CharacterTable", "ClassInfo", "GroupTooLarge", "NoSuitablePrime", "NonIntegralCentralCharacter",
    "PrincipalBlock", "dixon_table", "lifting_prime", "principal_block",
]
