"""Lyubeznik numbers of the vertex of an affine cone, in characteristic p.

lambda_{i,j} is read off as the dimension of the stable part of the Frobenius
action on the degree-0 piece of Ext^{n+1-i}(Ext^{n+1-j}(R/I, R), R).
"""
from .cone import (
    ConeComputation,
    ConeInput,
    LyubeznikTable,
    M0Table,
    krull_dimension,
    lyubeznik_number,
    lyubeznik_table,
    m0_dimension,
    m0_table,
)
from .embeddings import (
    ComparisonReport,
    EmbeddingPresentation,
    compare_invariants,
    coordinate_change,
    linear_augment,
    permute_variables,
    veronese_ideal,
)
from .errors import *  # noqa: F401,F403
from .frobenius import FrobeniusPipeline, bracket_power, f0_matrix
from .oracle import oracle_lyubeznik_monomial, taylor_resolution
from .parse import format_input, parse_input
from .ring import Ideal, Polynomial, PolyRingCtx
from .stable import PLinearEndo, rank_sequence, stable_dimension
