"""
Utility modules for herdisc
"""

from .file_io import (
    ensure_directory,
    write_matrix,
    read_matrix,
    write_coloring,
    read_coloring,
    read_results_csv
)

__all__ = [
    # File I/O utilities
    'ensure_directory',
    'write_matrix',
    'read_matrix',
    'write_coloring',
    'read_coloring',
    'read_results_csv'
]
