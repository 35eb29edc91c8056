from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

FLOAT_DECIMALS = 10


def ensure_dir(p: Path) -> None:
    p.mkdir(parents=True, exist_ok=True)


def _plain(obj: Any) -> Any:
    """numpy scalars and arrays as JSON-native values."""
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def round_floats(obj: Any, decimals: int = FLOAT_DECIMALS) -> Any:
    if isinstance(obj, float):
        return round(obj, decimals)
    if isinstance(obj, dict):
        return {k: round_floats(v, decimals) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, decimals) for v in obj]
    return obj


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False, default=_plain)


def write_json(path: Path, obj: Any) -> None:
    path.write_text(dumps_json(obj) + "\n", encoding="utf-8")


def write_md(path: Path, content: str) -> None:
    path.write_text(content, encoding="utf-8")


def df_to_csv_text(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, lineterminator="\n")


def write_df_csv(path: Path, df: pd.DataFrame) -> None:
    df.to_csv(path, index=False, lineterminator="\n")
