"""Vocabulary, context inventory, and sparse association matrices.

Matrices are CSR: every hot query loop is a row gather, and both
orientations (vocabulary rows and context rows) are materialized so the
expansion kernel never branches on direction. Scores are kept as 32-bit
floats; association scores carry at most a few significant digits and
halving the file size matters more.

The on-disk format is little-endian and versioned:

    magic "FWAM" | u32 version | u8 orientation | u8 family | u8 measure
    | u8 pad | f64 shift_k | u64 n_rows | u64 n_cols | u64 nnz
    | u64 fingerprint | i64 indptr[n_rows+1] | u32 indices[nnz]
    | f32 scores[nnz]

The fingerprint is derived from the co-occurrence counts a matrix was
built from, so loaders can refuse to pair matrices that came from
different corpora or thresholds.
"""

from __future__ import annotations

import enum
import hashlib
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .association import (
    AssociationConfig,
    CooccurrenceCounts,
    Direction,
    Measure,
    association_values,
)

MAGIC = b"FWAM"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sIBBBBdQQQQ")


class MatrixFormatError(Exception):
    """Base class for persistence failures."""


class BadMagicError(MatrixFormatError):
    pass


class VersionMismatchError(MatrixFormatError):
    pass


class TruncatedDataError(MatrixFormatError):
    pass


class Orientation(enum.Enum):
    V_ROWS = "v-rows"  # vocabulary rows, context columns
    C_ROWS = "c-rows"  # context rows, vocabulary columns


class ContextFamily(enum.Enum):
    SYNTACTIC = "syntactic"
    SENTENCE = "sentence-cooccurrence"


_ORIENTATION_CODE = {Orientation.V_ROWS: 0, Orientation.C_ROWS: 1}
_FAMILY_CODE = {ContextFamily.SYNTACTIC: 0, ContextFamily.SENTENCE: 1}
_MEASURE_CODE = {Measure.PPMI: 0, Measure.APPMI: 1}


def _decode(table: dict, code: int, what: str):
    for key, value in table.items():
        if value == code:
            return key
    raise MatrixFormatError(f"unknown {what} code: {code}")


class Vocabulary:
    """Bijective term <-> dense id mapping plus corpus frequencies."""

    def __init__(self, terms: list[str], frequencies: list[int] | None = None):
        self.terms = list(terms)
        self.index = {t: i for i, t in enumerate(self.terms)}
        if len(self.index) != len(self.terms):
            raise ValueError("duplicate terms in vocabulary")
        self.frequencies = list(frequencies) if frequencies is not None else [0] * len(terms)
        if len(self.frequencies) != len(self.terms):
            raise ValueError("frequency list length mismatch")

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index

    def id_of(self, term: str) -> int:
        return self.index[term]

    def term_of(self, word_id: int) -> str:
        return self.terms[word_id]

    def save(self, path: str | Path) -> None:
        # One term per line, id implied by line number. The trailing
        # tab column carries the corpus frequency.
        with open(path, "w", encoding="utf-8") as f:
            for term, freq in zip(self.terms, self.frequencies):
                f.write(f"{term}\t{freq}\n")

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        terms, freqs = [], []
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.rstrip("\n")
                if not line:
                    continue
                term, _, freq = line.partition("\t")
                terms.append(term)
                freqs.append(int(freq) if freq else 0)
        return cls(terms, freqs)


class ContextInventory:
    """Bijective context label <-> dense id mapping for one family."""

    def __init__(self, labels: list[str], family: ContextFamily):
        self.labels = list(labels)
        self.index = {l: i for i, l in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("duplicate context labels")
        self.family = family

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.index

    def id_of(self, label: str) -> int:
        return self.index[label]

    def label_of(self, context_id: int) -> str:
        return self.labels[context_id]

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for label in self.labels:
                f.write(label + "\n")

    @classmethod
    def load(cls, path: str | Path, family: ContextFamily) -> "ContextInventory":
        with open(path, encoding="utf-8") as f:
            labels = [line.rstrip("\n") for line in f if line.rstrip("\n")]
        return cls(labels, family)


@dataclass(frozen=True)
class MatrixHeader:
    orientation: Orientation
    family: ContextFamily
    measure: Measure
    shift_k: float
    n_rows: int
    n_cols: int
    fingerprint: int


class SparseAssociationMatrix:
    """Immutable CSR matrix of positive association scores."""

    def __init__(
        self,
        header: MatrixHeader,
        indptr: np.ndarray,
        indices: np.ndarray,
        data: np.ndarray,
    ):
        self.header = header
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.uint32)
        self.data = np.ascontiguousarray(data, dtype=np.float32)

    @property
    def n_rows(self) -> int:
        return self.header.n_rows

    @property
    def n_cols(self) -> int:
        return self.header.n_cols

    @property
    def nnz(self) -> int:
        return len(self.data)

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """(column ids, scores) views for row i; strictly increasing ids."""
        if not 0 <= i < self.n_rows:
            raise IndexError(f"row {i} out of range [0, {self.n_rows})")
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.data[lo:hi]

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.float64)
        for i in range(self.n_rows):
            cols, vals = self.row(i)
            out[i, cols] = vals
        return out

    def validate(self) -> None:
        if len(self.indptr) != self.n_rows + 1:
            raise AssertionError("indptr length mismatch")
        if self.indptr[0] != 0 or self.indptr[-1] != self.nnz:
            raise AssertionError("indptr endpoints inconsistent")
        if np.any(np.diff(self.indptr) < 0):
            raise AssertionError("indptr not monotone")
        if self.data.size and float(self.data.min()) <= 0.0:
            raise AssertionError("stored scores must be positive")
        for i in range(self.n_rows):
            cols, _ = self.row(i)
            if cols.size and (np.any(np.diff(cols.astype(np.int64)) <= 0)):
                raise AssertionError(f"row {i} column ids not strictly increasing")
            if cols.size and int(cols.max()) >= self.n_cols:
                raise AssertionError(f"row {i} column id out of range")

    # --- persistence ---

    def to_bytes(self) -> bytes:
        h = self.header
        head = _HEADER.pack(
            MAGIC,
            FORMAT_VERSION,
            _ORIENTATION_CODE[h.orientation],
            _FAMILY_CODE[h.family],
            _MEASURE_CODE[h.measure],
            0,
            h.shift_k,
            h.n_rows,
            h.n_cols,
            self.nnz,
            h.fingerprint,
        )
        parts = [
            head,
            self.indptr.astype("<i8").tobytes(),
            self.indices.astype("<u4").tobytes(),
            self.data.astype("<f4").tobytes(),
        ]
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, blob: bytes) -> "SparseAssociationMatrix":
        if len(blob) < 4:
            raise TruncatedDataError("data shorter than magic")
        if blob[:4] != MAGIC:
            raise BadMagicError(f"bad magic {blob[:4]!r}")
        if len(blob) < _HEADER.size:
            raise TruncatedDataError("truncated header")
        (
            _,
            version,
            orientation_code,
            family_code,
            measure_code,
            _pad,
            shift_k,
            n_rows,
            n_cols,
            nnz,
            fingerprint,
        ) = _HEADER.unpack_from(blob, 0)
        if version != FORMAT_VERSION:
            raise VersionMismatchError(
                f"format version {version}, expected {FORMAT_VERSION}"
            )
        header = MatrixHeader(
            orientation=_decode(_ORIENTATION_CODE, orientation_code, "orientation"),
            family=_decode(_FAMILY_CODE, family_code, "family"),
            measure=_decode(_MEASURE_CODE, measure_code, "measure"),
            shift_k=shift_k,
            n_rows=int(n_rows),
            n_cols=int(n_cols),
            fingerprint=int(fingerprint),
        )
        offset = _HEADER.size
        expected = offset + 8 * (n_rows + 1) + 4 * nnz + 4 * nnz
        if len(blob) < expected:
            raise TruncatedDataError(
                f"expected {expected} bytes, got {len(blob)}"
            )
        indptr = np.frombuffer(blob, dtype="<i8", count=n_rows + 1, offset=offset)
        offset += 8 * (n_rows + 1)
        indices = np.frombuffer(blob, dtype="<u4", count=nnz, offset=offset)
        offset += 4 * nnz
        data = np.frombuffer(blob, dtype="<f4", count=nnz, offset=offset)
        matrix = cls(header, indptr.copy(), indices.copy(), data.copy())
        if matrix.indptr[0] != 0 or matrix.indptr[-1] != nnz:
            raise MatrixFormatError("corrupt row offsets")
        return matrix

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: str | Path) -> "SparseAssociationMatrix":
        return cls.from_bytes(Path(path).read_bytes())


def counts_fingerprint(counts: CooccurrenceCounts) -> int:
    """Stable 64-bit digest of the exact pair counts."""
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack("<qqq", counts.n_words, counts.n_contexts, counts.total))
    h.update(counts.word_ids.astype("<i8").tobytes())
    h.update(counts.context_ids.astype("<i8").tobytes())
    h.update(counts.counts.astype("<i8").tobytes())
    return int.from_bytes(h.digest(), "little")


def _csr_from_triples(
    rows: np.ndarray, cols: np.ndarray, vals: np.ndarray, n_rows: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    order = np.lexsort((cols, rows))
    rows, cols, vals = rows[order], cols[order], vals[order]
    indptr = np.zeros(n_rows + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n_rows), out=indptr[1:])
    return indptr, cols.astype(np.uint32), vals


def build_matrices(
    counts: CooccurrenceCounts,
    measure: Measure = Measure.PPMI,
    shift_k: float = 5.0,
    family: ContextFamily = ContextFamily.SYNTACTIC,
) -> tuple[SparseAssociationMatrix, SparseAssociationMatrix]:
    """Build the vocabulary-rows and context-rows matrices from counts.

    Scores of zero or below are omitted, so sparsity is preserved by
    construction. Empty counts yield valid empty matrices.
    """
    fingerprint = counts_fingerprint(counts)
    w, c, n = counts.word_ids, counts.context_ids, counts.counts
    wm = counts.word_marginals[w] if len(w) else np.zeros(0, dtype=np.int64)
    cm = counts.context_marginals[c] if len(c) else np.zeros(0, dtype=np.int64)
    total = float(counts.total)

    vc_cfg = AssociationConfig(measure, shift_k, Direction.WORD_TO_CONTEXT)
    cv_cfg = AssociationConfig(measure, shift_k, Direction.CONTEXT_TO_WORD)

    def one(cfg: AssociationConfig, orientation: Orientation) -> SparseAssociationMatrix:
        if cfg.direction is Direction.WORD_TO_CONTEXT:
            first, second = wm, cm
            rows, cols = w, c
            n_rows, n_cols = counts.n_words, counts.n_contexts
        else:
            first, second = cm, wm
            rows, cols = c, w
            n_rows, n_cols = counts.n_contexts, counts.n_words
        if len(n):
            vals64 = association_values(n, first, second, total, cfg.measure, cfg.shift_k)
            vals32 = vals64.astype(np.float32)
            keep = vals32 > 0
            indptr, indices, data = _csr_from_triples(
                rows[keep], cols[keep], vals32[keep], n_rows
            )
        else:
            indptr = np.zeros(n_rows + 1, dtype=np.int64)
            indices = np.zeros(0, dtype=np.uint32)
            data = np.zeros(0, dtype=np.float32)
        header = MatrixHeader(
            orientation=orientation,
            family=family,
            measure=cfg.measure,
            shift_k=cfg.shift_k,
            n_rows=n_rows,
            n_cols=n_cols,
            fingerprint=fingerprint,
        )
        return SparseAssociationMatrix(header, indptr, indices, data)

    return one(vc_cfg, Orientation.V_ROWS), one(cv_cfg, Orientation.C_ROWS)


def save_store(
    directory: str | Path,
    family: ContextFamily,
    vocabulary: Vocabulary,
    contexts: ContextInventory,
    m_vc: SparseAssociationMatrix,
    m_cv: SparseAssociationMatrix,
) -> dict[str, Path]:
    """Write one family's vocabulary, context inventory, and matrix pair."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    stem = family.value
    paths = {
        "vocabulary": directory / f"{stem}.vocab.txt",
        "contexts": directory / f"{stem}.contexts.txt",
        "vc": directory / f"{stem}.vc.mat",
        "cv": directory / f"{stem}.cv.mat",
    }
    vocabulary.save(paths["vocabulary"])
    contexts.save(paths["contexts"])
    m_vc.save(paths["vc"])
    m_cv.save(paths["cv"])
    return paths


def load_store(
    directory: str | Path, family: ContextFamily
) -> tuple[Vocabulary, ContextInventory, SparseAssociationMatrix, SparseAssociationMatrix]:
    """Load one family's store; refuses mismatched matrix pairs."""
    directory = Path(directory)
    stem = family.value
    vocabulary = Vocabulary.load(directory / f"{stem}.vocab.txt")
    contexts = ContextInventory.load(directory / f"{stem}.contexts.txt", family)
    m_vc = SparseAssociationMatrix.load(directory / f"{stem}.vc.mat")
    m_cv = SparseAssociationMatrix.load(directory / f"{stem}.cv.mat")
    check_matrix_pair(m_vc, m_cv)
    if m_vc.header.family is not family:
        raise MatrixFormatError(
            f"store {directory} holds family {m_vc.header.family.value}, expected {family.value}"
        )
    return vocabulary, contexts, m_vc, m_cv


def store_families(directory: str | Path) -> list[ContextFamily]:
    """Families with a complete store in the directory."""
    directory = Path(directory)
    found = []
    for family in ContextFamily:
        stem = family.value
        needed = [
            directory / f"{stem}.vocab.txt",
            directory / f"{stem}.contexts.txt",
            directory / f"{stem}.vc.mat",
            directory / f"{stem}.cv.mat",
        ]
        if all(p.exists() for p in needed):
            found.append(family)
    return found


def check_matrix_pair(
    m_vc: SparseAssociationMatrix, m_cv: SparseAssociationMatrix
) -> None:
    """Refuse matrix pairs that were not built together."""
    a, b = m_vc.header, m_cv.header
    if a.orientation is not Orientation.V_ROWS or b.orientation is not Orientation.C_ROWS:
        raise ValueError("matrix pair has wrong orientations")
    if a.fingerprint != b.fingerprint:
        raise ValueError("matrix pair fingerprints differ (different corpus builds)")
    if a.measure is not b.measure or a.shift_k != b.shift_k:
        raise ValueError("matrix pair measure settings differ")
    if a.family is not b.family:
        raise ValueError("matrix pair families differ")
    if (a.n_rows, a.n_cols) != (b.n_cols, b.n_rows):
        raise ValueError("matrix pair dimensions are not transposed")
