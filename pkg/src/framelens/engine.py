"""Core statistics: contributions, bias, intensity, bootstrap significance,
word shifts, document spectra, corpus separation, and the log-odds baseline.

A word's contribution to a frame is the cosine between its vector and the
frame's axis. Corpus bias is the frequency-weighted mean contribution;
corpus intensity is the frequency-weighted second moment of contributions
about the full-corpus baseline bias. Significance comes from bootstrap
samples of the full corpus sized to match the target: token draws are
i.i.d. with replacement from the full corpus's bag of words, implemented
as multinomial count resampling so no token strings are ever touched.

All accumulation iterates count tables in sorted-token order (O(|vocab|)
per frame, not O(tokens)) and is carried out in float64 regardless of the
storage dtype of the embedding table.

Reproducibility: every frame draws from its own substream, derived from
(master seed, frame index), so results are identical for any degree of
parallelism or scheduling order.
"""

from __future__ import annotations

import concurrent.futures
import math
from dataclasses import dataclass

import numpy as np

from .corpus import CorpusView
from .embeddings import EmbeddingTable
from .errors import DataError
from .frames import FrameRegistry, Microframe

#: Bootstrap draws happen in fixed-size batches so memory stays bounded and
#: the consumed random stream never depends on worker count.
_BOOTSTRAP_BATCH = 256

SHIFT_KINDS = ("bias", "intensity")
BOOTSTRAP_UNITS = ("token", "document")


# ---------------------------------------------------------------------------
# Result types


@dataclass(frozen=True)
class FramingResult:
    """Per-(corpus, frame) statistics against the bootstrap null."""

    frame_id: str
    bias: float
    intensity: float
    baseline_bias: float
    effect_bias: float
    effect_intensity: float
    p_bias: float
    p_intensity: float
    n_bootstrap: int

    def to_dict(self) -> dict:
        return {
            "frame_id": self.frame_id,
            "bias": self.bias,
            "intensity": self.intensity,
            "baseline_bias": self.baseline_bias,
            "effect_bias": self.effect_bias,
            "effect_intensity": self.effect_intensity,
            "p_bias": self.p_bias,
            "p_intensity": self.p_intensity,
            "n_bootstrap": self.n_bootstrap,
        }


@dataclass(frozen=True, eq=False)
class NullDistribution:
    """Bootstrap samples of bias and intensity for one frame."""

    frame_id: str
    bias_samples: np.ndarray
    intensity_samples: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        self.bias_samples.setflags(write=False)
        self.intensity_samples.setflags(write=False)


@dataclass(frozen=True)
class ShiftEntry:
    """One word's additive contribution to bias or intensity, target vs background."""

    token: str
    shift_target: float
    shift_background: float
    shift_delta: float
    kind: str


@dataclass(frozen=True)
class SpectrumEntry:
    """One document's bias and intensity on a frame; None when the document
    is empty after masking."""

    doc_id: str
    group: str | None
    doc_bias: float | None
    doc_intensity: float | None


@dataclass(frozen=True)
class SeparationResult:
    """Between-corpus differences on one frame, with 1-based ranks."""

    frame_id: str
    delta_bias: float
    delta_intensity: float
    rank_bias: int
    rank_intensity: int
    rank_sum: int
    bias_a: float
    bias_b: float
    intensity_a: float
    intensity_b: float
    mean_intensity: float


# ---------------------------------------------------------------------------
# Contributions and corpus statistics


def word_contribution(word_vector: np.ndarray, frame: Microframe) -> float:
    """Cosine similarity between a word vector and the frame axis, in [-1, 1]."""
    v = np.asarray(word_vector, dtype=np.float64)
    a = frame.axis
    if v.shape != a.shape:
        raise DataError(
            f"dimension mismatch: word has {v.shape}, axis has {a.shape}"
        )
    nv = float(np.linalg.norm(v))
    na = float(np.linalg.norm(a))
    if nv == 0.0 or na == 0.0:
        raise DataError("zero-norm vector has no direction")
    return float(v @ a / (nv * na))


def _contribution_vector(
    table: EmbeddingTable, tokens: list[str], frame: Microframe
) -> np.ndarray:
    """Contributions for many tokens at once; tokens must resolve in `table`."""
    matrix = table.matrix_for(tokens)
    norms = np.linalg.norm(matrix, axis=1)
    if np.any(norms == 0.0):
        raise DataError("zero-norm vector has no direction")
    na = float(np.linalg.norm(frame.axis))
    if na == 0.0:
        raise DataError("zero-norm axis")
    return (matrix @ frame.axis) / (norms * na)


def _count_vector(view: CorpusView, tokens: list[str]) -> np.ndarray:
    return np.array([view.counts[t] for t in tokens], dtype=np.float64)


def corpus_bias(view: CorpusView, frame: Microframe, table: EmbeddingTable) -> float:
    """Frequency-weighted mean contribution of the view on `frame`."""
    tokens = view.vocabulary()
    if not tokens:
        raise DataError("empty corpus view")
    c = _contribution_vector(table, tokens, frame)
    n = _count_vector(view, tokens)
    return float((n @ c) / n.sum())


def corpus_intensity(
    view: CorpusView,
    frame: Microframe,
    table: EmbeddingTable,
    baseline_bias: float,
) -> float:
    """Frequency-weighted second moment of contributions about `baseline_bias`.

    The baseline is the full-corpus bias on the same frame, computed once
    on the whole corpus and passed down; it is never recomputed per view.
    """
    tokens = view.vocabulary()
    if not tokens:
        raise DataError("empty corpus view")
    c = _contribution_vector(table, tokens, frame)
    n = _count_vector(view, tokens)
    dev = (c - baseline_bias) ** 2
    return float((n @ dev) / n.sum())


# ---------------------------------------------------------------------------
# Bootstrap null model and significance


def frame_seed(master_seed: int, frame_index: int) -> int:
    """Derive the substream seed for one frame from the master seed.

    Uses numpy's SeedSequence spawn keys, so per-frame streams are
    independent and reproducible regardless of scheduling.
    """
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(frame_index,))
    return int(ss.generate_state(2, np.uint32).view(np.uint64)[0])


def _null_samples_token(
    rng: np.random.Generator,
    probs: np.ndarray,
    contrib: np.ndarray,
    sq_dev: np.ndarray,
    sample_size: int,
    n: int,
) -> tuple[np.ndarray, np.ndarray]:
    bias = np.empty(n, dtype=np.float64)
    intensity = np.empty(n, dtype=np.float64)
    done = 0
    while done < n:
        b = min(_BOOTSTRAP_BATCH, n - done)
        draws = rng.multinomial(sample_size, probs, size=b)
        bias[done : done + b] = draws @ contrib / sample_size
        intensity[done : done + b] = draws @ sq_dev / sample_size
        done += b
    return bias, intensity


def _null_samples_document(
    rng: np.random.Generator,
    doc_bias_sum: np.ndarray,
    doc_int_sum: np.ndarray,
    doc_total: np.ndarray,
    sample_docs: int,
    n: int,
) -> tuple[np.ndarray, np.ndarray]:
    n_docs = doc_total.shape[0]
    bias = np.empty(n, dtype=np.float64)
    intensity = np.empty(n, dtype=np.float64)
    done = 0
    while done < n:
        b = min(_BOOTSTRAP_BATCH, n - done)
        picks = rng.integers(0, n_docs, size=(b, sample_docs))
        totals = doc_total[picks].sum(axis=1)
        # All-empty resamples have no tokens to average; redraw those rows.
        while np.any(totals == 0.0):
            bad = np.flatnonzero(totals == 0.0)
            picks[bad] = rng.integers(0, n_docs, size=(bad.size, sample_docs))
            totals = doc_total[picks].sum(axis=1)
        bias[done : done + b] = doc_bias_sum[picks].sum(axis=1) / totals
        intensity[done : done + b] = doc_int_sum[picks].sum(axis=1) / totals
        done += b
    return bias, intensity


def _doc_coo(view: CorpusView, tokens: list[str]):
    """Sparse (document, token) count triplets over the given token order,
    plus per-document countable totals."""
    index = {t: i for i, t in enumerate(tokens)}
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    for d, dc in enumerate(view.doc_counts):
        for tok, cnt in dc.items():
            rows.append(d)
            cols.append(index[tok])
            vals.append(float(cnt))
    row_arr = np.array(rows, dtype=np.intp)
    col_arr = np.array(cols, dtype=np.intp)
    val_arr = np.array(vals, dtype=np.float64)
    doc_total = np.bincount(row_arr, weights=val_arr, minlength=len(view.doc_counts))
    return row_arr, col_arr, val_arr, doc_total


def bootstrap_null(
    full_view: CorpusView,
    frame: Microframe,
    table: EmbeddingTable,
    sample_size: int,
    n: int,
    seed: int,
    unit: str = "token",
) -> NullDistribution:
    """Bias/intensity distribution over `n` bootstrap samples of the full corpus.

    With the default token unit, each sample draws `sample_size` tokens
    i.i.d. with replacement from the full corpus's token multiset (count
    resampling via a multinomial). With the document unit, each sample
    draws `sample_size` documents with replacement instead; this is a
    sensitivity-analysis alternative, not the default, because bias and
    intensity are token-weighted statistics. Intensity of every sample is
    measured against the full-corpus baseline bias. Deterministic under
    `seed`.
    """
    if n < 1:
        raise DataError(f"need at least one bootstrap sample, got {n}")
    if sample_size < 1:
        raise DataError(f"sample size must be positive, got {sample_size}")
    if unit not in BOOTSTRAP_UNITS:
        raise DataError(f"unknown bootstrap unit {unit!r}")
    tokens = full_view.vocabulary()
    if not tokens:
        raise DataError("empty corpus view")
    contrib = _contribution_vector(table, tokens, frame)
    counts = _count_vector(full_view, tokens)
    total = counts.sum()
    baseline = float((counts @ contrib) / total)
    sq_dev = (contrib - baseline) ** 2
    rng = np.random.default_rng(seed)
    if unit == "token":
        bias, intensity = _null_samples_token(
            rng, counts / total, contrib, sq_dev, sample_size, n
        )
    else:
        rows, cols, vals, doc_total = _doc_coo(full_view, tokens)
        n_docs = doc_total.shape[0]
        doc_bias_sum = np.bincount(rows, weights=vals * contrib[cols], minlength=n_docs)
        doc_int_sum = np.bincount(rows, weights=vals * sq_dev[cols], minlength=n_docs)
        bias, intensity = _null_samples_document(
            rng, doc_bias_sum, doc_int_sum, doc_total, sample_size, n
        )
    return NullDistribution(
        frame_id=frame.id, bias_samples=bias, intensity_samples=intensity, seed=seed
    )


def _two_tailed_p(observed: float, samples: np.ndarray) -> float:
    n = samples.shape[0]
    ge = int(np.count_nonzero(samples >= observed))
    le = int(np.count_nonzero(samples <= observed))
    greater = (ge + 1) / (n + 1)
    lesser = (le + 1) / (n + 1)
    return min(1.0, 2.0 * min(greater, lesser))


def significance(
    observed_bias: float,
    observed_intensity: float,
    null: NullDistribution,
) -> tuple[float, float, float, float]:
    """Two-tailed bootstrap p-values and effect sizes.

    The effect size is the observed value minus the null-sample mean. The
    p-value uses the add-one rule (r + 1) / (N + 1) per tail so it is
    never exactly zero, doubled and clamped to 1 for the two-tailed test.
    """
    if null.bias_samples.size == 0:
        raise DataError("empty null distribution")
    effect_bias = observed_bias - float(null.bias_samples.mean())
    effect_intensity = observed_intensity - float(null.intensity_samples.mean())
    p_bias = _two_tailed_p(observed_bias, null.bias_samples)
    p_intensity = _two_tailed_p(observed_intensity, null.intensity_samples)
    return p_bias, p_intensity, effect_bias, effect_intensity


def top_significant_frames(
    results: list[FramingResult],
    by: str = "bias",
    m: int = 10,
    alpha: float = 0.05,
) -> list[FramingResult]:
    """The at-most-m significant frames with the largest absolute effect size.

    Filters to p <= alpha on the chosen statistic, sorts by |effect|
    descending with ties broken by frame id, and may return fewer than m.
    """
    if by not in SHIFT_KINDS:
        raise DataError(f"unknown statistic {by!r}")
    if by == "bias":
        kept = [r for r in results if r.p_bias <= alpha]
        kept.sort(key=lambda r: (-abs(r.effect_bias), r.frame_id))
    else:
        kept = [r for r in results if r.p_intensity <= alpha]
        kept.sort(key=lambda r: (-abs(r.effect_intensity), r.frame_id))
    return kept[:m]


# ---------------------------------------------------------------------------
# Word shifts, document spectrum


def shift_table(
    view: CorpusView,
    frame: Microframe,
    table: EmbeddingTable,
    kind: str,
    baseline_bias: float,
) -> dict[str, float]:
    """Every token's additive shift within one view.

    Bias shifts sum exactly to the view's bias; intensity shifts sum to
    its intensity. Each view normalizes by its own token total.
    """
    if kind not in SHIFT_KINDS:
        raise DataError(f"unknown shift kind {kind!r}")
    tokens = view.vocabulary()
    if not tokens:
        raise DataError("empty corpus view")
    c = _contribution_vector(table, tokens, frame)
    n = _count_vector(view, tokens)
    if kind == "bias":
        values = n * c / n.sum()
    else:
        values = n * (c - baseline_bias) ** 2 / n.sum()
    return dict(zip(tokens, values.tolist()))


def word_shifts(
    target: CorpusView,
    background: CorpusView,
    frame: Microframe,
    table: EmbeddingTable,
    kind: str,
    baseline_bias: float,
    k: int = 10,
) -> list[ShiftEntry]:
    """Top-k tokens by |target shift - background shift|.

    A token absent from one view contributes zero shift there, so a word
    that only the background uses pulls the delta negative. Ties break by
    token, ascending. k larger than the union vocabulary returns the full
    table.
    """
    shifts_t = shift_table(target, frame, table, kind, baseline_bias)
    shifts_b = shift_table(background, frame, table, kind, baseline_bias)
    union = sorted(set(shifts_t) | set(shifts_b))
    entries = [
        ShiftEntry(
            token=tok,
            shift_target=shifts_t.get(tok, 0.0),
            shift_background=shifts_b.get(tok, 0.0),
            shift_delta=shifts_t.get(tok, 0.0) - shifts_b.get(tok, 0.0),
            kind=kind,
        )
        for tok in union
    ]
    entries.sort(key=lambda e: (-abs(e.shift_delta), e.token))
    return entries[:k] if k > 0 else entries


def document_spectrum(
    view: CorpusView,
    frame: Microframe,
    table: EmbeddingTable,
    baseline_bias: float,
) -> list[SpectrumEntry]:
    """Per-document bias and intensity, sorted by bias ascending.

    Documents empty after masking are emitted with absent (None) values
    and sorted to the end by document id.
    """
    tokens = view.vocabulary()
    if not tokens:
        raise DataError("empty corpus view")
    c = _contribution_vector(table, tokens, frame)
    contrib = dict(zip(tokens, c.tolist()))
    present: list[SpectrumEntry] = []
    absent: list[SpectrumEntry] = []
    for doc, dc in zip(view.documents, view.doc_counts):
        if not dc:
            absent.append(SpectrumEntry(doc.doc_id, doc.group, None, None))
            continue
        total = 0
        bias_sum = 0.0
        int_sum = 0.0
        for tok, cnt in sorted(dc.items()):
            cw = contrib[tok]
            bias_sum += cnt * cw
            int_sum += cnt * (cw - baseline_bias) ** 2
            total += cnt
        present.append(
            SpectrumEntry(doc.doc_id, doc.group, bias_sum / total, int_sum / total)
        )
    present.sort(key=lambda e: (e.doc_bias, e.doc_id))
    absent.sort(key=lambda e: e.doc_id)
    return present + absent


def baseline_biases(
    view: CorpusView, frames: FrameRegistry, table: EmbeddingTable
) -> dict[str, float]:
    """Full-corpus bias per frame, with the embedding rows gathered once."""
    tokens = view.vocabulary()
    if not tokens:
        raise DataError("empty corpus view")
    matrix = table.matrix_for(tokens)
    norms = np.linalg.norm(matrix, axis=1)
    counts = _count_vector(view, tokens)
    total = counts.sum()
    out: dict[str, float] = {}
    for frame in frames:
        na = float(np.linalg.norm(frame.axis))
        contrib = (matrix @ frame.axis) / (norms * na)
        out[frame.id] = float((counts @ contrib) / total)
    return out


# ---------------------------------------------------------------------------
# Separation and frame selection


def _ordinal_ranks(keyed: list[tuple[float, str]]) -> dict[str, int]:
    """1-based ranks, descending by value, deterministic ties by id."""
    order = sorted(keyed, key=lambda kv: (-kv[0], kv[1]))
    return {fid: i + 1 for i, (_, fid) in enumerate(order)}


def separation(
    view_a: CorpusView,
    view_b: CorpusView,
    frames: FrameRegistry,
    table: EmbeddingTable,
    baseline: dict[str, float],
) -> list[SeparationResult]:
    """Per-frame bias and intensity differences between two corpora.

    Both intensities are measured against the shared full-corpus baseline
    passed in `baseline`. The intensity rank orders frames by the mean
    intensity across the union of both corpora (token-weighted, which
    equals the intensity of the pooled counts); the bias rank orders by
    |delta bias|. Ranks are 1-based, descending, ties by frame id.
    """
    tokens_a = view_a.vocabulary()
    tokens_b = view_b.vocabulary()
    if not tokens_a or not tokens_b:
        raise DataError("empty corpus view")
    matrix_a = table.matrix_for(tokens_a)
    matrix_b = table.matrix_for(tokens_b)
    norms_a = np.linalg.norm(matrix_a, axis=1)
    norms_b = np.linalg.norm(matrix_b, axis=1)
    counts_a = _count_vector(view_a, tokens_a)
    counts_b = _count_vector(view_b, tokens_b)
    total_a = counts_a.sum()
    total_b = counts_b.sum()

    rows: list[dict] = []
    for frame in frames:
        if frame.id not in baseline:
            raise DataError(f"no baseline bias for frame {frame.id!r}")
        b_t = baseline[frame.id]
        na = float(np.linalg.norm(frame.axis))
        c_a = (matrix_a @ frame.axis) / (norms_a * na)
        c_b = (matrix_b @ frame.axis) / (norms_b * na)
        bias_a = float((counts_a @ c_a) / total_a)
        bias_b = float((counts_b @ c_b) / total_b)
        int_a = float((counts_a @ (c_a - b_t) ** 2) / total_a)
        int_b = float((counts_b @ (c_b - b_t) ** 2) / total_b)
        mean_int = (total_a * int_a + total_b * int_b) / (total_a + total_b)
        rows.append(
            {
                "frame_id": frame.id,
                "bias_a": bias_a,
                "bias_b": bias_b,
                "intensity_a": int_a,
                "intensity_b": int_b,
                "mean_intensity": mean_int,
            }
        )

    rank_b = _ordinal_ranks([(abs(r["bias_a"] - r["bias_b"]), r["frame_id"]) for r in rows])
    rank_i = _ordinal_ranks([(r["mean_intensity"], r["frame_id"]) for r in rows])
    results = []
    for r in rows:
        fid = r["frame_id"]
        results.append(
            SeparationResult(
                frame_id=fid,
                delta_bias=r["bias_a"] - r["bias_b"],
                delta_intensity=r["intensity_a"] - r["intensity_b"],
                rank_bias=rank_b[fid],
                rank_intensity=rank_i[fid],
                rank_sum=rank_b[fid] + rank_i[fid],
                bias_a=r["bias_a"],
                bias_b=r["bias_b"],
                intensity_a=r["intensity_a"],
                intensity_b=r["intensity_b"],
                mean_intensity=r["mean_intensity"],
            )
        )
    return results


def rank_sum_select(separations: list[SeparationResult], m: int) -> list[str]:
    """Ids of the m frames with the smallest rank sum, ties by frame id."""
    order = sorted(separations, key=lambda s: (s.rank_sum, s.frame_id))
    return [s.frame_id for s in order[:m]]


def log_odds_dirichlet(
    target: CorpusView,
    background: CorpusView,
    prior: CorpusView,
    k: int = 10,
) -> list[tuple[str, float]]:
    """Overrepresented tokens by log odds ratio with an informative Dirichlet prior.

    The pseudo-count for each token is its count in the prior corpus
    (floored at 1 so unseen tokens stay defined). Returns the top-k
    tokens by z-score descending, ties by token ascending. This is the
    frequency-only comparison baseline: unlike shift analysis it knows
    nothing about any frame.
    """
    if not target.counts or not background.counts or not prior.counts:
        raise DataError("empty corpus view")
    vocab = sorted(set(target.counts) | set(background.counts))
    y_t = np.array([target.counts.get(t, 0) for t in vocab], dtype=np.float64)
    y_b = np.array([background.counts.get(t, 0) for t in vocab], dtype=np.float64)
    alpha = np.array(
        [max(prior.counts.get(t, 0), 1) for t in vocab], dtype=np.float64
    )
    alpha0 = alpha.sum()
    n_t = y_t.sum()
    n_b = y_b.sum()
    delta = np.log((y_t + alpha) / (n_t + alpha0 - y_t - alpha)) - np.log(
        (y_b + alpha) / (n_b + alpha0 - y_b - alpha)
    )
    variance = 1.0 / (y_t + alpha) + 1.0 / (y_b + alpha)
    z = delta / np.sqrt(variance)
    scored = sorted(zip(vocab, z.tolist()), key=lambda tz: (-tz[1], tz[0]))
    return scored[:k] if k > 0 else scored


# ---------------------------------------------------------------------------
# Full-registry analysis pipeline (cached arrays, optional process pool)

_WORKER_CTX: dict | None = None


def _init_worker(ctx: dict) -> None:
    global _WORKER_CTX
    _WORKER_CTX = ctx


def _frame_task(task: tuple[int, str, np.ndarray]) -> FramingResult:
    ctx = _WORKER_CTX
    assert ctx is not None, "worker context not initialized"
    index, fid, axis = task
    matrix = ctx["matrix"]
    norms = ctx["norms"]
    n_full = ctx["n_full"]
    total_full = ctx["total_full"]
    idx_t = ctx["idx_target"]
    n_t = ctx["n_target"]
    total_t = ctx["total_target"]

    na = float(np.linalg.norm(axis))
    contrib = (matrix @ axis) / (norms * na)
    baseline = float((n_full @ contrib) / total_full)
    sq_dev = (contrib - baseline) ** 2
    bias_t = float((n_t @ contrib[idx_t]) / total_t)
    int_t = float((n_t @ sq_dev[idx_t]) / total_t)

    seed = frame_seed(ctx["master_seed"], index)
    rng = np.random.default_rng(seed)
    n_boot = ctx["n_bootstrap"]
    if ctx["unit"] == "token":
        bias_s, int_s = _null_samples_token(
            rng, ctx["probs"], contrib, sq_dev, int(total_t), n_boot
        )
    else:
        rows, cols, vals = ctx["doc_rows"], ctx["doc_cols"], ctx["doc_vals"]
        n_docs = ctx["doc_total"].shape[0]
        doc_bias = np.bincount(rows, weights=vals * contrib[cols], minlength=n_docs)
        doc_int = np.bincount(rows, weights=vals * sq_dev[cols], minlength=n_docs)
        bias_s, int_s = _null_samples_document(
            rng, doc_bias, doc_int, ctx["doc_total"], ctx["sample_docs"], n_boot
        )
    null = NullDistribution(fid, bias_s, int_s, seed)
    p_b, p_i, eff_b, eff_i = significance(bias_t, int_t, null)
    return FramingResult(
        frame_id=fid,
        bias=bias_t,
        intensity=int_t,
        baseline_bias=baseline,
        effect_bias=eff_b,
        effect_intensity=eff_i,
        p_bias=p_b,
        p_intensity=p_i,
        n_bootstrap=n_boot,
    )


def analyze_frames(
    full_view: CorpusView,
    target_view: CorpusView,
    registry: FrameRegistry,
    table: EmbeddingTable,
    *,
    n_bootstrap: int = 1000,
    seed: int = 0,
    workers: int = 1,
    bootstrap_unit: str = "token",
    progress: "callable | None" = None,
) -> list[FramingResult]:
    """Run the full per-frame analysis of a target corpus against its parent.

    For every registry frame: the target's bias and intensity, the
    full-corpus baseline bias, and bootstrap significance with the null
    sized to the target (token count for the token unit, document count
    for the document unit). The embedding rows for the full vocabulary
    are gathered once and shared across frames. Results come back in
    registry order whatever the worker count. `progress`, when given, is
    called with (frames done, frames total) as results complete; it must
    not influence the computation.
    """
    if n_bootstrap < 1:
        raise DataError(f"need at least one bootstrap sample, got {n_bootstrap}")
    if bootstrap_unit not in BOOTSTRAP_UNITS:
        raise DataError(f"unknown bootstrap unit {bootstrap_unit!r}")
    if not registry.frames:
        raise DataError("no frames to analyze")
    tokens_full = full_view.vocabulary()
    tokens_target = target_view.vocabulary()
    if not tokens_full or not tokens_target:
        raise DataError("empty corpus view")
    if not set(tokens_target) <= set(tokens_full):
        raise DataError("target vocabulary is not contained in the full corpus")

    matrix = table.matrix_for(tokens_full)
    norms = np.linalg.norm(matrix, axis=1)
    n_full = _count_vector(full_view, tokens_full)
    total_full = n_full.sum()
    positions = {t: i for i, t in enumerate(tokens_full)}
    idx_target = np.array([positions[t] for t in tokens_target], dtype=np.intp)
    n_target = _count_vector(target_view, tokens_target)

    ctx: dict = {
        "matrix": matrix,
        "norms": norms,
        "n_full": n_full,
        "total_full": total_full,
        "probs": n_full / total_full,
        "idx_target": idx_target,
        "n_target": n_target,
        "total_target": float(target_view.total_tokens),
        "n_bootstrap": n_bootstrap,
        "master_seed": seed,
        "unit": bootstrap_unit,
    }
    if bootstrap_unit == "document":
        rows, cols, vals, doc_total = _doc_coo(full_view, tokens_full)
        ctx["doc_rows"] = rows
        ctx["doc_cols"] = cols
        ctx["doc_vals"] = vals
        ctx["doc_total"] = doc_total
        ctx["sample_docs"] = max(len(target_view.documents), 1)

    tasks = [(i, f.id, f.axis) for i, f in enumerate(registry.frames)]
    total = len(tasks)
    step = max(1, total // 20)

    def _collect(iterator) -> list[FramingResult]:
        results: list[FramingResult] = []
        for res in iterator:
            results.append(res)
            if progress and (len(results) % step == 0 or len(results) == total):
                progress(len(results), total)
        return results

    if workers <= 1 or total == 1:
        _init_worker(ctx)
        try:
            return _collect(map(_frame_task, tasks))
        finally:
            _init_worker(None)  # type: ignore[arg-type]
    chunk = max(1, math.ceil(total / (workers * 4)))
    with concurrent.futures.ProcessPoolExecutor(
        max_workers=workers, initializer=_init_worker, initargs=(ctx,)
    ) as pool:
        return _collect(pool.map(_frame_task, tasks, chunksize=chunk))
