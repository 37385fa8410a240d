"""
Run logger for quiverlab CLI invocations.

Each run gets:
- a markdown file with one row per event (human-readable audit trail)
- rows in a SQLite store (``events`` and ``runs`` tables) for later queries
"""

import json
import os
import sqlite3
import time
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional


class RunLogger:
    """
    Records the verbs a CLI run executed, with timings and outcome metadata.

    Attributes:
        log_dir: Directory receiving ``run_<id>.md`` files.
        db_path: SQLite database path.
        run_id: Identifier shared by all events of the run.
    """

    def __init__(
        self,
        log_dir: str = "logs",
        db_path: Optional[str] = None,
        run_id: Optional[str] = None,
    ):
        self.log_dir = Path(log_dir)
        self.db_path = db_path or str(self.log_dir / "runs.db")
        self.run_id = run_id or datetime.now().strftime("%Y%m%d_%H%M%S_%f")
        self.run_start_time = time.perf_counter()
        self._events: List[Dict[str, Any]] = []

        self.log_dir.mkdir(parents=True, exist_ok=True)
        db_dir = os.path.dirname(self.db_path)
        if db_dir:
            os.makedirs(db_dir, exist_ok=True)

        self._initialize_database()
        self.md_path = self.log_dir / f"run_{self.run_id}.md"
        self._write_md_header()
        self.log_event("run_start", "cli", {"run_id": self.run_id})

    def _initialize_database(self) -> None:
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("""
                CREATE TABLE IF NOT EXISTS events (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    run_id TEXT NOT NULL,
                    timestamp TEXT NOT NULL,
                    event_type TEXT NOT NULL,
                    component TEXT NOT NULL,
                    message TEXT,
                    metadata TEXT,
                    duration_ms REAL,
                    created_at REAL NOT NULL
                )
            """)
            conn.execute("""
                CREATE TABLE IF NOT EXISTS runs (
                    run_id TEXT PRIMARY KEY,
                    status TEXT NOT NULL,
                    duration_ms REAL,
                    event_count INTEGER,
                    finished_at TEXT
                )
            """)
            conn.execute("CREATE INDEX IF NOT EXISTS idx_events_run ON events(run_id)")
            conn.execute(
                "CREATE INDEX IF NOT EXISTS idx_events_type ON events(event_type)"
            )
            conn.commit()

    def _write_md_header(self) -> None:
        header = f"""# quiverlab run {self.run_id}

**Started:** {datetime.now().isoformat()}
**Database:** `{self.db_path}`

---

| Time | Component | Event | Details |
|------|-----------|-------|---------|
"""
        with open(self.md_path, "w", encoding="utf-8") as f:
            f.write(header)

    def _append_md(self, text: str) -> None:
        with open(self.md_path, "a", encoding="utf-8") as f:
            f.write(text)

    def log_event(
        self,
        event_type: str,
        component: str,
        metadata: Optional[Dict[str, Any]] = None,
        message: Optional[str] = None,
        duration_ms: Optional[float] = None,
    ) -> None:
        """
        Log one event.

        Args:
            event_type: Kind of event (e.g. 'verb_start', 'verb_end', 'error').
            component: Module or verb name (e.g. 'decompose').
            metadata: JSON-serializable extra data.
            message: Human-readable message.
            duration_ms: Duration if the event closes a timed operation.
        """
        timestamp = datetime.now().isoformat()
        created_at = time.time()
        self._events.append(
            {
                "event_type": event_type,
                "component": component,
                "metadata": metadata,
                "message": message,
                "duration_ms": duration_ms,
            }
        )

        with sqlite3.connect(self.db_path) as conn:
            conn.execute(
                """
                INSERT INTO events
                (run_id, timestamp, event_type, component, message, metadata,
                 duration_ms, created_at)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?)
                """,
                (
                    self.run_id,
                    timestamp,
                    event_type,
                    component,
                    message,
                    json.dumps(metadata, sort_keys=True) if metadata else None,
                    duration_ms,
                    created_at,
                ),
            )
            conn.commit()

        details = message or ""
        if metadata:
            key_info = ", ".join(f"{k}={v}" for k, v in list(metadata.items())[:3])
            details = f"{details} ({key_info})" if details else key_info
        details = details.replace("|", "\\|").replace("\n", " ")[:100]
        self._append_md(
            f"| {timestamp.split('T')[1][:12]} | {component} | {event_type} | {details} |\n"
        )

    @contextmanager
    def timed_operation(
        self, component: str, operation: str, metadata: Optional[Dict[str, Any]] = None
    ) -> Iterator[Dict[str, Any]]:
        """
        Time a block and log its outcome.

        Usage:
            with run_logger.timed_operation("decompose", "krs") as op:
                op["metadata"]["summands"] = 3
        """
        start = time.perf_counter()
        context: Dict[str, Any] = {"metadata": dict(metadata or {})}
        status = "success"
        try:
            yield context
        except Exception as e:
            status = "error"
            context["message"] = str(e)
            raise
        finally:
            self.log_event(
                operation,
                component,
                {**context["metadata"], "status": status},
                context.get("message"),
                (time.perf_counter() - start) * 1000,
            )

    def finalize_run(self, status: str = "completed") -> Dict[str, Any]:
        """Write the run summary to both sinks and return the statistics."""
        duration_ms = (time.perf_counter() - self.run_start_time) * 1000
        self.log_event(
            "run_end", "cli", {"status": status}, f"Run {status} after {duration_ms:.0f}ms"
        )
        stats = self.get_run_stats()
        with sqlite3.connect(self.db_path) as conn:
            conn.execute(
                "INSERT OR REPLACE INTO runs VALUES (?, ?, ?, ?, ?)",
                (
                    self.run_id,
                    status,
                    duration_ms,
                    stats["event_count"],
                    datetime.now().isoformat(),
                ),
            )
            conn.commit()

        lines = [
            "",
            "---",
            "",
            "## Summary",
            "",
            f"- **Status**: {status}",
            f"- **Duration**: {duration_ms:.2f} ms",
            f"- **Events**: {stats['event_count']}",
        ]
        for event_type, count in stats["by_type"].items():
            lines.append(f"- **{event_type}**: {count}")
        self._append_md("\n".join(lines) + "\n")
        return stats

    def get_run_stats(self) -> Dict[str, Any]:
        """Event counts for the current run, total and per event type."""
        with sqlite3.connect(self.db_path) as conn:
            count = conn.execute(
                "SELECT COUNT(*) FROM events WHERE run_id = ?", (self.run_id,)
            ).fetchone()[0]
            breakdown = conn.execute(
                """
                SELECT event_type, COUNT(*) FROM events
                WHERE run_id = ?
                GROUP BY event_type
                ORDER BY event_type
                """,
                (self.run_id,),
            ).fetchall()
        return {
            "run_id": self.run_id,
            "event_count": count,
            "by_type": {event_type: n for event_type, n in breakdown},
        }


_run_logger: Optional[RunLogger] = None


def get_run_logger() -> Optional[RunLogger]:
    """Return the active run logger, or None when run logging is off."""
    return _run_logger


def init_run_logger(
    log_dir: str = "logs",
    db_path: Optional[str] = None,
    run_id: Optional[str] = None,
) -> RunLogger:
    """Initialize a new run logger (resets the global instance)."""
    global _run_logger
    _run_logger = RunLogger(log_dir=log_dir, db_path=db_path, run_id=run_id)
    return _run_logger


def close_run_logger(status: str = "completed") -> Optional[Dict[str, Any]]:
    """Finalize and drop the global run logger, if any."""
    global _run_logger
    if _run_logger is None:
        return None
    stats = _run_logger.finalize_run(status)
    _run_logger = None
    return stats
