"""
app/ingestion/csv_loader.py

Chargement des datasets UCI au format CSV et encodage des labels de classe
en entiers consécutifs 1..Nc.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal, Sequence

import numpy as np
import pandas as pd

from app.errors import ParseError, SchemaError, ShapeError

logger = logging.getLogger(__name__)

MISSING_TOKENS = {"", "?", "na", "nan", "null", "<na>"}


# =========================
#   Modèles de données
# =========================

@dataclass(frozen=True)
class LabelEncoding:
    class_names: tuple[str, ...]

    @property
    def mapping(self) -> dict[str, int]:
        return {name: i + 1 for i, name in enumerate(self.class_names)}

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @classmethod
    def from_values(cls, values: Iterable) -> "LabelEncoding":
        """Ordre = tri des valeurs brutes distinctes (déterministe)."""
        return cls(class_names=tuple(str(v) for v in sorted(set(values))))

    def encode(self, raw: Sequence) -> np.ndarray:
        mapping = self.mapping
        return np.array([mapping[str(v)] for v in raw], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    encoding: LabelEncoding
    name: str = "dataset"
    row_ids: np.ndarray | None = None
    dropped_rows: int = 0
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        features = np.array(self.features, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.int64)
        if features.ndim != 2:
            raise ShapeError(f"features doit être une matrice N×m, reçu shape {features.shape}")
        if labels.shape != (features.shape[0],):
            raise ShapeError(
                f"{labels.shape[0] if labels.ndim else 0} labels pour {features.shape[0]} lignes"
            )
        if not np.all(np.isfinite(features)):
            raise SchemaError("Les features doivent être finies (NaN ou infini présent)")
        if labels.size and (labels.min() < 1 or labels.max() > self.encoding.n_classes):
            raise SchemaError(
                f"Labels hors de 1..{self.encoding.n_classes} : [{labels.min()}, {labels.max()}]"
            )
        row_ids = (
            np.arange(features.shape[0], dtype=np.int64)
            if self.row_ids is None
            else np.array(self.row_ids, dtype=np.int64)
        )
        for arr in (features, labels, row_ids):
            arr.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "row_ids", row_ids)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return self.encoding.n_classes

    def subset(self, indices: Sequence[int] | np.ndarray) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(
            features=self.features[idx],
            labels=self.labels[idx],
            encoding=self.encoding,
            name=self.name,
            row_ids=self.row_ids[idx],
            dropped_rows=self.dropped_rows,
            metadata=self.metadata,
        )

    def with_features(self, features: np.ndarray) -> "Dataset":
        return Dataset(
            features=features,
            labels=self.labels,
            encoding=self.encoding,
            name=self.name,
            row_ids=self.row_ids,
            dropped_rows=self.dropped_rows,
            metadata=self.metadata,
        )

    def summary(self) -> dict:
        return {
            "name": self.name,
            "n_samples": self.n_samples,
            "n_features": self.n_features,
            "n_classes": self.n_classes,
            "class_names": list(self.encoding.class_names),
            "class_counts": np.bincount(self.labels, minlength=self.n_classes + 1)[1:].tolist(),
            "dropped_rows": self.dropped_rows,
        }


def make_dataset(features, raw_labels, name: str = "synthetic") -> Dataset:
    """
    Construit un Dataset en mémoire (données synthétiques, tests).
    Nc >= 2 implique N >= 2.
    """
    raw = list(np.asarray(raw_labels).tolist())
    encoding = LabelEncoding.from_values(raw)
    if encoding.n_classes < 2:
        raise SchemaError(f"Au moins 2 classes sont nécessaires, {encoding.n_classes} trouvée(s)")
    return Dataset(features=features, labels=encoding.encode(raw), encoding=encoding, name=name)


# =========================
#   Lecture du fichier
# =========================

def _resolve_column(spec: int | str, columns: list, has_header: bool) -> int:
    """
    Convertit une référence de colonne en position 0-based.

    - entier positif : position 1-based (numérotation des attributs UCI)
    - entier négatif : depuis la fin (-1 = dernière colonne)
    - chaîne : nom de colonne (nécessite un en-tête)
    """
    n_cols = len(columns)
    if isinstance(spec, int):
        if spec == 0 or abs(spec) > n_cols:
            raise SchemaError(f"Colonne {spec} hors limites (fichier à {n_cols} colonnes)")
        return spec - 1 if spec > 0 else n_cols + spec
    if not has_header:
        raise SchemaError(f"Colonne nommée '{spec}' demandée mais le fichier n'a pas d'en-tête")
    names = [str(c).strip() for c in columns]
    if spec not in names:
        raise SchemaError(f"Colonne '{spec}' absente (colonnes : {names})")
    return names.index(spec)


def _is_missing(value) -> bool:
    return value is None or (isinstance(value, float) and np.isnan(value)) or (
        str(value).strip().lower() in MISSING_TOKENS
    )


def load_csv(
    path: str | Path,
    label_column: int | str = -1,
    missing_policy: Literal["drop_row", "error"] = "drop_row",
    drop_columns: Sequence[int | str] = (),
    has_header: bool = False,
    name: str | None = None,
) -> Dataset:
    """
    Charge un CSV UCI (séparateur virgule, UTF-8).

    :param label_column: colonne du label (voir _resolve_column)
    :param missing_policy: "drop_row" supprime les lignes incomplètes,
        "error" lève une ParseError nommant la ligne et la colonne
    :param drop_columns: colonnes ignorées (ex: identifiant d'échantillon)
    :return: Dataset avec encodage déterministe, ordre des lignes conservé
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Dataset non trouvé: {path}")

    try:
        df = pd.read_csv(
            path,
            header=0 if has_header else None,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            skip_blank_lines=True,
            encoding="utf-8",
        )
    except pd.errors.ParserError as e:
        raise ParseError(f"CSV mal formé ({path}): {e}") from e
    except pd.errors.EmptyDataError as e:
        raise SchemaError(f"Fichier vide: {path}") from e

    columns = list(df.columns)
    label_idx = _resolve_column(label_column, columns, has_header)
    dropped_idx = {_resolve_column(c, columns, has_header) for c in drop_columns}
    if label_idx in dropped_idx:
        raise SchemaError("La colonne du label ne peut pas être supprimée")
    feature_idx = [i for i in range(len(columns)) if i != label_idx and i not in dropped_idx]
    if not feature_idx:
        raise SchemaError("Aucune colonne de features après suppression des colonnes ignorées")

    raw_labels = df.iloc[:, label_idx]
    numeric = df.iloc[:, feature_idx].apply(
        lambda col: pd.to_numeric(col.astype(object).str.strip(), errors="coerce")
    )
    numeric = numeric.replace([np.inf, -np.inf], np.nan)

    bad_cells = numeric.isna().to_numpy()
    bad_labels = raw_labels.map(_is_missing).to_numpy()
    bad_rows = bad_cells.any(axis=1) | bad_labels

    if bad_rows.any():
        first = int(np.flatnonzero(bad_rows)[0])
        if bad_labels[first]:
            column: int | str = columns[label_idx]
        else:
            column = columns[feature_idx[int(np.flatnonzero(bad_cells[first])[0])]]
        if missing_policy == "error":
            value = df.iloc[first][column] if column in df.columns else None
            raise ParseError(
                f"Ligne {first} ({path}), colonne {column!r}: valeur {value!r} non numérique ou manquante",
                row=first,
                column=column,
            )
        logger.warning(
            "%d ligne(s) incomplète(s) supprimée(s) de %s (première: ligne %d, colonne %r)",
            int(bad_rows.sum()),
            path.name,
            first,
            column,
        )

    keep = np.flatnonzero(~bad_rows)
    features = numeric.to_numpy(dtype=np.float64)[keep]
    labels_raw = [str(v).strip() for v in raw_labels.to_numpy()[keep]]

    encoding = LabelEncoding.from_values(labels_raw)
    if encoding.n_classes < 2:
        raise SchemaError(
            f"Au moins 2 classes sont nécessaires, {encoding.n_classes} trouvée(s) dans {path}"
        )

    dataset = Dataset(
        features=features,
        labels=encoding.encode(labels_raw),
        encoding=encoding,
        name=name or path.stem,
        row_ids=keep,
        dropped_rows=int(bad_rows.sum()),
    )
    logger.info(
        "Dataset chargé: %s (N=%d, m=%d, Nc=%d)",
        dataset.name,
        dataset.n_samples,
        dataset.n_features,
        dataset.n_classes,
    )
    return dataset
