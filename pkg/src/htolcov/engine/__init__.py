from .atoms import AtomTable
from .consolidate import (COVERED, DEFAULT_BUDGET, UNCOVERED, UNKNOWN_BUDGET, CoverageVerdict,
                          HyperlabelSearch, Witness, consolidate, replay_witness)
from .harvest import Harvester, harvest, match_sequence
from .log import Occurrence, OccurrenceLog
from .session import Measurement

__all__ = [
    "AtomTable", "COVERED", "CoverageVerdict", "DEFAULT_BUDGET", "Harvester",
    "HyperlabelSearch", "Measurement", "Occurrence", "OccurrenceLog", "UNCOVERED",
    "UNKNOWN_BUDGET", "Witness", "consolidate", "harvest", "match_sequence", "replay_witness",
]
from .oracle import Oracle, OracleRefused, oracle_covering_envs, oracle_covers
from .report import CSV_VERSION, CoverageReport, coverage_score, parse_csv_report

__all__ += ["CSV_VERSION", "CoverageReport", "Oracle", "OracleRefused", "coverage_score",
            "oracle_covering_envs", "oracle_covers", "parse_csv_report"]
