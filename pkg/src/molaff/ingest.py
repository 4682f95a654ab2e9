"""Feature-table loading, pruning, standardization, and label splitting.

Input conventions:

- features CSV: header ``id,<feat1>,<feat2>,...``, UTF-8, ``.`` decimal separator
- labels CSV:   header ``id,score``; scores are opaque reals (docking scale)
- molecules CSV: header ``id,smiles``

All transformations are pure: they return new tables and never mutate
their inputs.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from molaff.errors import (
    DuplicateIdError,
    EmptyCellError,
    FormatError,
    InsufficientLabelsError,
    MissingColumnError,
    NonNumericCellError,
)

SPLITS = ("train", "val", "test", "unlabeled")


@dataclass(frozen=True)
class FeatureTable:
    """Row-aligned numeric matrix with molecule IDs and column names."""

    ids: tuple[str, ...]
    columns: tuple[str, ...]
    values: np.ndarray  # shape (len(ids), len(columns)), float64

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "columns", tuple(self.columns))
        if values.shape != (len(self.ids), len(self.columns)):
            raise FormatError(
                f"value matrix shape {values.shape} does not match "
                f"{len(self.ids)} ids x {len(self.columns)} columns"
            )
        if len(set(self.ids)) != len(self.ids):
            raise DuplicateIdError("duplicate molecule IDs in feature table")
        if len(set(self.columns)) != len(self.columns):
            raise FormatError("duplicate column names in feature table")
        if values.size and not np.all(np.isfinite(values)):
            raise FormatError("feature table contains non-finite values")

    @property
    def n_rows(self) -> int:
        return len(self.ids)

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def select_columns(self, keep: Sequence[str]) -> "FeatureTable":
        index = {c: i for i, c in enumerate(self.columns)}
        cols = [index[c] for c in keep]
        return FeatureTable(self.ids, tuple(keep), self.values[:, cols])

    def select_rows(self, ids: Sequence[str]) -> "FeatureTable":
        index = {m: i for i, m in enumerate(self.ids)}
        rows = [index[m] for m in ids]
        return FeatureTable(tuple(ids), self.columns, self.values[rows])

    def row(self, mol_id: str) -> np.ndarray:
        return self.values[self.ids.index(mol_id)]


@dataclass
class MoleculeRecord:
    """One molecule: ID, structure string, optional label, split assignment."""

    id: str
    smiles: str = ""
    label: float | None = None
    split: str = "unlabeled"

    def __post_init__(self):
        if self.split not in SPLITS:
            raise FormatError(f"unknown split {self.split!r} for {self.id!r}")


@dataclass(frozen=True)
class ScalerParams:
    """Per-column standardization parameters (population sigma)."""

    columns: tuple[str, ...]
    mean: np.ndarray
    std: np.ndarray
    dropped: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "dropped", tuple(self.dropped))
        object.__setattr__(self, "mean", np.asarray(self.mean, dtype=np.float64))
        object.__setattr__(self, "std", np.asarray(self.std, dtype=np.float64))
        if len(self.columns) != self.mean.shape[0] or len(self.columns) != self.std.shape[0]:
            raise FormatError("scaler columns/mean/std lengths disagree")
        if np.any(self.std <= 0):
            raise FormatError("scaler std must be positive for every retained column")

    def to_json(self) -> str:
        payload = {
            "columns": list(self.columns),
            "mean": [float(v) for v in self.mean],
            "std": [float(v) for v in self.std],
            "dropped": list(self.dropped),
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ScalerParams":
        payload = json.loads(text)
        return cls(
            columns=tuple(payload["columns"]),
            mean=np.asarray(payload["mean"], dtype=np.float64),
            std=np.asarray(payload["std"], dtype=np.float64),
            dropped=tuple(payload.get("dropped", ())),
        )


# --- loading ----------------------------------------------------------------


def _parse_cell(text: str, row: int, col: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise NonNumericCellError(row, col, text) from None
    if not math.isfinite(value):
        raise NonNumericCellError(row, col, text)
    return value


def load_feature_table(path: str | Path, drop_incomplete_rows: bool = False) -> FeatureTable:
    """Load a features CSV (``id`` first, numeric columns after).

    Empty cells reject the whole file unless ``drop_incomplete_rows`` is set,
    in which case rows containing any empty cell are silently skipped.
    Row order follows file order.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"feature table not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError(f"{path}: empty file") from None
        if not header or header[0] != "id":
            raise FormatError(f"{path}: first header column must be 'id'")
        columns = tuple(header[1:])
        if len(set(columns)) != len(columns):
            raise FormatError(f"{path}: duplicate column names")

        ids: list[str] = []
        seen: set[str] = set()
        rows: list[list[float]] = []
        for row_no, raw in enumerate(reader):
            if not raw:
                continue
            if len(raw) != len(header):
                raise FormatError(
                    f"{path}: row {row_no} has {len(raw)} fields, expected {len(header)}"
                )
            mol_id, cells = raw[0], raw[1:]
            if any(cell.strip() == "" for cell in cells):
                if drop_incomplete_rows:
                    continue
                bad = next(i for i, cell in enumerate(cells) if cell.strip() == "")
                raise EmptyCellError(row_no, columns[bad])
            if mol_id in seen:
                raise DuplicateIdError(f"{path}: duplicate id {mol_id!r}")
            seen.add(mol_id)
            ids.append(mol_id)
            rows.append([_parse_cell(c, row_no, columns[i]) for i, c in enumerate(cells)])

    values = np.asarray(rows, dtype=np.float64).reshape(len(ids), len(columns))
    return FeatureTable(tuple(ids), columns, values)


def write_feature_table(table: FeatureTable, path: str | Path) -> None:
    """Write a features CSV with shortest-roundtrip float formatting."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", *table.columns])
        for i, mol_id in enumerate(table.ids):
            writer.writerow([mol_id, *(repr(float(v)) for v in table.values[i])])


def load_labels(path: str | Path) -> dict[str, float]:
    """Load a labels CSV (``id,score``) into an id -> score mapping."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"labels file not found: {path}")
    labels: dict[str, float] = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 2 or header[0] != "id":
            raise FormatError(f"{path}: expected header 'id,score'")
        for row_no, raw in enumerate(reader):
            if not raw:
                continue
            mol_id, score = raw[0], raw[1]
            if mol_id in labels:
                raise DuplicateIdError(f"{path}: duplicate id {mol_id!r}")
            labels[mol_id] = _parse_cell(score, row_no, header[1])
    return labels


def load_molecules(path: str | Path) -> dict[str, str]:
    """Load a molecules CSV (``id,smiles``) into an id -> SMILES mapping."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"molecules file not found: {path}")
    smiles: dict[str, str] = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 2 or header[0] != "id":
            raise FormatError(f"{path}: expected header 'id,smiles'")
        for raw in reader:
            if not raw:
                continue
            if raw[0] in smiles:
                raise DuplicateIdError(f"{path}: duplicate id {raw[0]!r}")
            smiles[raw[0]] = raw[1]
    return smiles


# --- pruning and standardization ---------------------------------------------


def prune_correlated(
    table: FeatureTable, threshold: float
) -> tuple[FeatureTable, list[str]]:
    """Drop columns until no retained pair has |Pearson r| above ``threshold``.

    Zero-variance columns are dropped first. The remaining columns are scanned
    in order; when a pair violates the threshold, the later column is dropped,
    so the earliest column of any correlated group survives.
    """
    if not 0.0 < threshold <= 1.0:
        raise FormatError(f"correlation threshold must be in (0, 1], got {threshold}")
    if table.n_rows < 2:
        raise FormatError("correlation pruning needs at least 2 rows")

    values = table.values
    std = values.std(axis=0)
    constant = std == 0.0
    dropped = [c for c, is_const in zip(table.columns, constant) if is_const]

    live_idx = np.flatnonzero(~constant)
    if live_idx.size == 0:
        return table.select_columns([]), dropped

    centered = values[:, live_idx] - values[:, live_idx].mean(axis=0)
    normed = centered / std[live_idx]
    corr = np.abs(normed.T @ normed) / table.n_rows

    kept: list[int] = []
    for j in range(live_idx.size):
        if kept and np.any(corr[kept, j] > threshold):
            dropped.append(table.columns[live_idx[j]])
        else:
            kept.append(j)

    keep_names = [table.columns[live_idx[j]] for j in kept]
    return table.select_columns(keep_names), dropped


def standardize(
    table: FeatureTable, params: ScalerParams | None = None
) -> tuple[FeatureTable, ScalerParams]:
    """Center and scale each column to mean 0, population std 1.

    Without ``params``, fits on the table and drops zero-variance columns.
    With ``params``, applies the stored transform without refitting; columns
    recorded as dropped at fit time are dropped here too, and a table column
    unknown to ``params`` is an error.
    """
    if params is None:
        mean = table.values.mean(axis=0) if table.n_rows else np.zeros(table.n_cols)
        std = table.values.std(axis=0) if table.n_rows else np.ones(table.n_cols)
        keep = std > 0.0
        dropped = tuple(c for c, k in zip(table.columns, keep) if not k)
        kept_cols = tuple(c for c, k in zip(table.columns, keep) if k)
        params = ScalerParams(kept_cols, mean[keep], std[keep], dropped)
        transformed = (table.values[:, keep] - mean[keep]) / std[keep]
        return FeatureTable(table.ids, kept_cols, transformed), params

    known = {c: i for i, c in enumerate(params.columns)}
    dropped_set = set(params.dropped)
    out_cols: list[str] = []
    out_idx: list[int] = []
    for j, col in enumerate(table.columns):
        if col in dropped_set:
            continue
        if col not in known:
            raise MissingColumnError(f"column {col!r} missing from scaler parameters")
        out_cols.append(col)
        out_idx.append(j)
    src = np.asarray([known[c] for c in out_cols], dtype=int)
    transformed = (table.values[:, out_idx] - params.mean[src]) / params.std[src]
    return FeatureTable(table.ids, tuple(out_cols), transformed), params


# --- splitting ----------------------------------------------------------------


def make_split(
    records: Iterable[MoleculeRecord],
    ratios: tuple[float, float, float] = (0.6, 0.2, 0.2),
    seed: int = 0,
) -> list[MoleculeRecord]:
    """Assign train/val/test splits to the labeled records, deterministically.

    Labeled records are shuffled with the seed and sliced at the cumulative
    floor boundaries of the ratios (829 labeled rows at 60/20/20 become
    497/166/166). Unlabeled records pass through with split ``unlabeled``.
    """
    records = list(records)
    if len(ratios) != 3 or abs(sum(ratios) - 1.0) > 1e-9:
        raise FormatError(f"split ratios must be three values summing to 1, got {ratios}")
    labeled = [i for i, r in enumerate(records) if r.label is not None]
    if len(labeled) < 3:
        raise InsufficientLabelsError(
            f"need at least 3 labeled records to split, got {len(labeled)}"
        )

    n = len(labeled)
    order = np.random.default_rng(seed).permutation(n)
    b1 = int(math.floor(n * ratios[0]))
    b2 = int(math.floor(n * (ratios[0] + ratios[1])))
    assignment = {}
    for pos, labeled_pos in enumerate(order):
        split = "train" if pos < b1 else "val" if pos < b2 else "test"
        assignment[labeled[labeled_pos]] = split

    out = []
    for i, rec in enumerate(records):
        split = assignment.get(i, "unlabeled")
        out.append(replace(rec, split=split))
    return out


def build_records(
    feature_ids: Sequence[str],
    labels: dict[str, float],
    smiles: dict[str, str] | None = None,
) -> list[MoleculeRecord]:
    """Join feature-table IDs with labels and SMILES into molecule records.

    An ID without a label entry is an unlabeled molecule, not an error: that
    is the semi-supervised case.
    """
    smiles = smiles or {}
    return [
        MoleculeRecord(id=mol_id, smiles=smiles.get(mol_id, ""), label=labels.get(mol_id))
        for mol_id in feature_ids
    ]
