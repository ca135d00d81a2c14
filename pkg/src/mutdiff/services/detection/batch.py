from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from mutdiff.models.ast import Program
from mutdiff.models.mutant import Mutant
from mutdiff.models.schemas.config import DetectorConfig
from mutdiff.schemas.verdict import Verdict
from mutdiff.tasks.detection import detect_mutant_task, error_verdict
from mutdiff.utils.logger import get_logger

logger = get_logger(__name__)


def batch_detect(
    program: Program,
    mutants: List[Mutant],
    cfg: Optional[DetectorConfig] = None,
    jobs: int = 1,
    emit_smt: Optional[Path] = None,
) -> List[Tuple[str, Verdict]]:
    """Run detection for every mutant and return (mutant id, verdict) pairs in input order.

    A mutant whose detection raises is recorded as Unknown with reason error; the remaining
    mutants are unaffected. With jobs > 1 mutants are distributed over worker processes.
    """
    cfg = cfg or DetectorConfig()
    if not mutants:
        return []

    if jobs <= 1 or len(mutants) == 1:
        return [(mutant.id, detect_mutant_task(program, mutant, cfg, emit_smt)) for mutant in mutants]

    verdicts: Dict[int, Verdict] = {}
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        futures = {
            executor.submit(detect_mutant_task, program, mutant, cfg, emit_smt): i
            for i, mutant in enumerate(mutants)
        }
        for future in as_completed(futures):
            i = futures[future]
            try:
                verdicts[i] = future.result()
            except Exception as e:
                # the worker itself died; detect_mutant_task already handles detection errors
                logger.error(f"Worker failed on mutant {mutants[i].id}: {e}", exc_info=True)
                verdicts[i] = error_verdict(e, cfg)

    return [(mutant.id, verdicts[i]) for i, mutant in enumerate(mutants)]
