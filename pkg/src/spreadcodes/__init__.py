"""Spread codes and hybrid codes for erasure channels in random network coding."""

from __future__ import annotations

from spreadcodes.channel import ErasurePattern, apply_cec, apply_rec, sample_pattern, transmit
from spreadcodes.count import (
    cec_counts,
    cec_counts_deletions,
    gaussian_binomial,
    hybrid_counts,
    rate,
    ratio_and_limit_checks,
    rec_count,
)
from spreadcodes.decode import (
    GabidulinCode,
    decode_cec,
    decode_cec_with_deletions,
    decode_rec,
    rank_metric_erasure_decode,
)
from spreadcodes.errors import (
    BudgetExceededError,
    DecodingError,
    DeletionsUnsupportedError,
    InconsistentObservationError,
    SingularMatrixError,
    UndecodableError,
    UnderdeterminedError,
)
from spreadcodes.gf import GF, BaseField, ExtField, ExtFieldElem, MonicPoly, companion, find_irreducible
from spreadcodes.hybrid import HybridCode, hybrid_decode_cec, hybrid_encode
from spreadcodes.linalg import ErasableMatrix, MatFq, Subspace, parse_matrix, rank, rref
from spreadcodes.oracle import oracle_cec_correctable, oracle_decoder_agreement, oracle_rec_count
from spreadcodes.spread import GrassmannPoint, SpreadCode, encode, identify, point_from_index, point_index

__version__ = "0.1.0"
