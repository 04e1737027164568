from .reports import SCHEMA, TheoremReport, Verdict

__all__ = ["SCHEMA", "TheoremReport", "Verdict"]
