"""Result rows, the CSV schema and the run summary."""

from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd
import yaml
from loguru import logger
from numpy.typing import NDArray

from ghf_lattice.model.hubbard import ModelSpec
from ghf_lattice.observables.records import FIELD_OBSERVABLES

RESULT_COLUMNS = (
    "mode",
    "n_h",
    "n_v",
    "boundary",
    "interaction_form",
    "t",
    "u",
    "mu",
    "v_t",
    "seed",
    "beta",
    "time",
    "energy",
    "particle_number",
    "pairing",
    "entropy",
    "free_energy",
    "residual",
    "steps",
    "converged",
)

# Canonical row order; independent of the order in which workers finish
SORT_COLUMNS = ("u", "mu", "v_t", "seed", "beta", "time")
SEED_GROUP_COLUMNS = ("u", "mu", "v_t", "beta", "time")

RESULTS_FILE = "results.csv"
SUMMARY_FILE = "summary.yaml"
FIELDS_FILE = "fields.npz"


def base_row(mode: str, spec: ModelSpec, seed: int) -> dict:
    """Row pre-filled with the model parameters; solver columns start as NaN."""
    row = {name: np.nan for name in RESULT_COLUMNS}
    row.update(
        mode=mode,
        n_h=spec.n_h,
        n_v=spec.n_v,
        boundary=spec.boundary,
        interaction_form=spec.interaction_form,
        t=spec.t,
        u=spec.u,
        mu=spec.mu,
        v_t=spec.v_t,
        seed=seed,
        converged=True,
    )
    return row


def extra_columns(observables: Sequence[str]) -> List[str]:
    """Requested scalar observables not already part of the base schema, in request order."""
    return [
        name
        for name in observables
        if name not in RESULT_COLUMNS and name not in FIELD_OBSERVABLES
    ]


def field_key(name: str, row: Mapping) -> str:
    """npz key of a field observable measured for ``row``."""
    parts = [f"{p}={row[p]:g}" for p in ("u", "mu", "v_t") if np.isfinite(row[p])]
    for p in ("beta", "time"):
        if np.isfinite(row[p]):
            parts.append(f"{p}={row[p]:g}")
    parts.append(f"seed={row['seed']}")
    return f"{name}[{','.join(parts)}]"


def results_frame(rows: Iterable[dict], observables: Sequence[str] = ()) -> pd.DataFrame:
    """Rows as a DataFrame with the fixed column order, sorted canonically."""
    columns = [*RESULT_COLUMNS, *extra_columns(observables)]
    frame = pd.DataFrame(list(rows))
    frame = frame.reindex(columns=columns)
    if frame.empty:
        return frame
    frame["converged"] = frame["converged"].astype(bool)
    frame = frame.sort_values(list(SORT_COLUMNS), kind="mergesort", na_position="first")
    return frame.reset_index(drop=True)


def write_results(frame: pd.DataFrame, out_dir: Path) -> Path:
    """Write ``results.csv``; floats keep full precision so reruns compare byte-for-byte."""
    path = Path(out_dir) / RESULTS_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_fields(fields: Dict[str, NDArray], out_dir: Path) -> Optional[Path]:
    """Write field observables to ``fields.npz``; nothing is written when there are none."""
    if not fields:
        return None
    path = Path(out_dir) / FIELDS_FILE
    np.savez_compressed(path, **{key: fields[key] for key in sorted(fields)})
    logger.info(f"Wrote {len(fields)} fields to {path}")
    return path


def write_summary(
    out_dir: Path,
    mode: str,
    frame: pd.DataFrame,
    converged: bool,
    wall_time: float,
    config: dict,
) -> Path:
    """Write ``summary.yaml`` describing the run."""
    summary = {
        "mode": mode,
        "runs": int(len(frame)),
        "converged": bool(converged),
        "unconverged_rows": int((~frame["converged"]).sum()) if len(frame) else 0,
        "wall_time_s": round(float(wall_time), 3),
        "columns": list(frame.columns),
    }
    if len(frame) and frame["seed"].nunique() > 1:
        # Largest energy gap between seeds at the same parameter point
        energies = frame.groupby(list(SEED_GROUP_COLUMNS), dropna=False)["energy"]
        summary["seed_energy_spread"] = float((energies.max() - energies.min()).max())
    summary["config"] = config
    path = Path(out_dir) / SUMMARY_FILE
    with open(path, "w") as f:
        yaml.safe_dump(summary, f, sort_keys=False, allow_unicode=True)
    logger.info(f"Wrote summary to {path}")
    return path
