"""Core package: errors and logging."""
