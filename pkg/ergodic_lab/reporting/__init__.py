from ergodic_lab.reporting.summary import Summary, SummaryRow, read_report, summarize, write_summary

__all__ = ["Summary", "SummaryRow", "read_report", "summarize", "write_summary"]
