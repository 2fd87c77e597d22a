"""Independent brute-force oracles, kept deliberately separate from the
library's code paths: pure-Python arithmetic, token streams instead of
count tables, sorting instead of rank bookkeeping."""

import math


def cosine(u, v) -> float:
    dot = sum(float(a) * float(b) for a, b in zip(u, v))
    nu = math.sqrt(sum(float(a) ** 2 for a in u))
    nv = math.sqrt(sum(float(b) ** 2 for b in v))
    return dot / (nu * nv)


def counted_stream(docs, table, topic_words) -> list[str]:
    """Every countable token occurrence in document order: not masked, not
    OOV, not the reserved sentinel."""
    stream = []
    for doc in docs:
        for tok in doc.tokens:
            if tok == "<UNK>" or tok in topic_words:
                continue
            if tok not in table:
                continue
            stream.append(tok)
    return stream


def contributions_by_token(stream, table, frame) -> dict[str, float]:
    out = {}
    for tok in stream:
        if tok not in out:
            out[tok] = cosine(table.vector_of(tok), frame.axis)
    return out


def stream_bias(stream, contrib) -> float:
    """Average contribution over every single token occurrence."""
    values = [contrib[t] for t in stream]
    return sum(values) / len(values)


def stream_intensity(stream, contrib, baseline) -> float:
    values = [(contrib[t] - baseline) ** 2 for t in stream]
    return sum(values) / len(values)


def select_by_rank_sum(rank_pairs, m):
    """rank_pairs: list of (frame_id, rank_a, rank_b); independent re-sort."""
    order = sorted(rank_pairs, key=lambda t: (t[1] + t[2], t[0]))
    return [fid for fid, _, _ in order[:m]]
