from .io import dumps_json, ensure_dir, round_floats, write_df_csv, write_json, write_md
from .setspec import format_set, parse_set

__all__ = [
    "dumps_json",
    "ensure_dir",
    "round_floats",
    "write_df_csv",
    "write_json",
    "write_md",
    "format_set",
    "parse_set",
]
