"""Worker entry points for detection. Everything here is importable at top level so that a
process pool can pickle the call."""
from functools import lru_cache
from pathlib import Path
from typing import Optional

from mutdiff.models.ast import Program
from mutdiff.models.mutant import Mutant
from mutdiff.models.schemas.config import DetectorConfig
from mutdiff.schemas.verdict import DetectionStats, Unknown, UnknownReason, Verdict
from mutdiff.services.detection.detector import EquivalenceDetector
from mutdiff.utils.logger import get_logger

logger = get_logger(__name__)


@lru_cache(maxsize=16)
def get_detector(program: Program, cfg: DetectorConfig) -> EquivalenceDetector:
    # One detector per (program, config) per process keeps the per-nd program systems cached
    return EquivalenceDetector(program, cfg)


def error_verdict(error: BaseException, cfg: DetectorConfig) -> Unknown:
    return Unknown(
        reason=UnknownReason.ERROR,
        nd_reached=cfg.nd_initial,
        detail=str(error),
        error_type=type(error).__name__,
        stats=DetectionStats(nd_reached=cfg.nd_initial),
    )


def detect_mutant_task(
    program: Program, mutant: Mutant, cfg: DetectorConfig, emit_smt: Optional[Path] = None
) -> Verdict:
    """Detect one mutant; any exception becomes an Unknown verdict with reason error."""
    try:
        return get_detector(program, cfg).detect(mutant, emit_smt)
    except Exception as e:
        logger.error(f"Detection failed for mutant {mutant.id}: {e}", exc_info=True)
        return error_verdict(e, cfg)
