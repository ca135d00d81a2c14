from pathlib import Path

from prometheus_client import CollectorRegistry, Counter, Histogram, Info, generate_latest

from mutdiff.core.config import settings
from mutdiff.schemas.verdict import Unknown, Verdict


class MetricsService:
    """Run metrics kept in a registry of their own, written out in the Prometheus text format"""

    def __init__(self):
        self.registry = CollectorRegistry()
        self.verdicts_total = Counter(
            "mutdiff_verdicts_total",
            "Number of verdicts by kind",
            ["program", "kind", "reason"],
            registry=self.registry,
        )
        self.mutants_total = Counter(
            "mutdiff_mutants_total", "Number of generated mutants", ["program"], registry=self.registry
        )
        self.solver_calls_total = Counter(
            "mutdiff_solver_calls_total", "Number of solve requests", ["program"], registry=self.registry
        )
        self.blocking_rounds_total = Counter(
            "mutdiff_blocking_rounds_total", "Number of blocking clauses added", ["program"], registry=self.registry
        )
        self.detection_duration_seconds = Histogram(
            "mutdiff_detection_duration_seconds",
            "Wall-clock time of one detect call in seconds",
            ["program"],
            buckets=(0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 300.0),
            registry=self.registry,
        )
        self.app_info = Info("mutdiff_app", "Application information", registry=self.registry)
        self.app_info.info({"version": settings.VERSION, "name": settings.PROJECT_NAME})

    def track_mutants(self, program: str, count: int) -> None:
        self.mutants_total.labels(program=program).inc(count)

    def track_verdict(self, program: str, verdict: Verdict) -> None:
        reason = verdict.reason.value if isinstance(verdict, Unknown) else ""
        self.verdicts_total.labels(program=program, kind=verdict.kind, reason=reason).inc()
        self.solver_calls_total.labels(program=program).inc(verdict.stats.solver_calls)
        self.blocking_rounds_total.labels(program=program).inc(verdict.stats.blocking_rounds)
        if verdict.stats.wall_ms is not None:
            self.detection_duration_seconds.labels(program=program).observe(verdict.stats.wall_ms / 1000)

    def get_metrics(self) -> bytes:
        return generate_latest(self.registry)

    def write(self, path: Path) -> None:
        Path(path).write_bytes(self.get_metrics())
