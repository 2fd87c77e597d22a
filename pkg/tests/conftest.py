import numpy as np
import pytest

from framelens.corpus import build_view, make_document
from framelens.embeddings import EmbeddingTable, LoadStats


def table_from_dict(vectors: dict[str, list[float]]) -> EmbeddingTable:
    """Build an in-memory embedding table for tests (float32 storage)."""
    tokens = list(vectors)
    dims = {len(v) for v in vectors.values()}
    assert len(dims) == 1, "all test vectors must share one dimension"
    matrix = np.array([vectors[t] for t in tokens], dtype=np.float32)
    return EmbeddingTable(
        dimension=matrix.shape[1],
        _index={t: i for i, t in enumerate(tokens)},
        _matrix=matrix,
        stats=LoadStats(kept=len(tokens)),
    )


def random_instance(rng: np.random.Generator, with_groups: bool = True):
    """A random small corpus + table + frame, within the desk-scale bounds
    (vocab <= 50, dim <= 16, docs <= 20)."""
    dim = int(rng.integers(2, 17))
    vocab_size = int(rng.integers(4, 51))
    tokens = [f"w{i}" for i in range(vocab_size)]
    matrix = rng.normal(size=(vocab_size, dim))
    # keep a couple of extra tokens for poles so corpora and poles can differ
    pole_minus, pole_plus = "pneg", "ppos"
    vectors = {t: matrix[i].tolist() for i, t in enumerate(tokens)}
    vectors[pole_minus] = rng.normal(size=dim).tolist()
    vectors[pole_plus] = rng.normal(size=dim).tolist()
    table = table_from_dict(vectors)

    topic_words = set(rng.choice(tokens, size=2, replace=False).tolist())
    n_docs = int(rng.integers(1, 21))
    docs = []
    for d in range(n_docs):
        length = int(rng.integers(1, 31))
        words = rng.choice(tokens, size=length, replace=True).tolist()
        if rng.random() < 0.5:
            words.append(f"oov{d}")  # absent from the table on purpose
        group = ("a" if d % 2 == 0 else "b") if with_groups else None
        docs.append(
            make_document(f"doc{d}", " ".join(words), group=group)
        )
    try:
        view = build_view(docs, table, topic_words)
    except Exception:
        return random_instance(rng, with_groups)  # all tokens masked; rare
    from framelens.frames import make_frame

    frame = make_frame(pole_minus, pole_plus, table)
    return table, docs, topic_words, view, frame


@pytest.fixture
def toy_table() -> EmbeddingTable:
    return table_from_dict(
        {
            "good": [1.0, 0.2, 0.1],
            "bad": [-1.0, -0.2, -0.1],
            "great": [0.9, 0.3, 0.0],
            "awful": [-0.8, -0.4, 0.1],
            "service": [0.3, 0.8, 0.2],
            "food": [0.1, 0.9, -0.3],
            "meal": [0.2, 0.7, -0.1],
            "slow": [-0.5, 0.1, 0.6],
        }
    )
