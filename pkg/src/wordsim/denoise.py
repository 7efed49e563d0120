"""Denoising autoencoder over one-hot word encodings.

The network reconstructs the standard word from a non-standard spelling;
its bottleneck activation is the learned code used by the distance D_a.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import neural
from .errors import BindingError, ConfigError
from .lexicon import Lexicon, one_hot
from .neural import Network, TrainConfig
from .vecdist import vector_metric

__all__ = [
    "AutoencoderModel",
    "hourglass_widths",
    "build_autoencoder",
    "encode",
    "encode_all",
    "train_autoencoder",
    "distance_Da",
    "nearest_standard",
    "save_autoencoder",
    "load_autoencoder",
]


@dataclass
class AutoencoderModel:
    net: Network
    bottleneck_index: int  # index into forward() outputs
    lexicon_fingerprint: str
    code_size: int
    depth: int
    seed: int = 0

    @property
    def vocab_size(self):
        return self.net.layers[0].in_dim


def hourglass_widths(n_input: int, code_size: int, depth: int) -> list:
    """Symmetric widths interpolating geometrically |A| -> code -> |A|.

    ``depth`` counts node layers (input, hiddens, output) and must be odd
    so the bottleneck sits in the middle; depth=3 gives [n, code, n].
    """
    if depth < 3 or depth % 2 == 0:
        raise ConfigError("depth must be an odd integer >= 3")
    if code_size < 1:
        raise ConfigError("code_size must be >= 1")
    if code_size >= n_input:
        raise ConfigError(
            f"code_size {code_size} must be smaller than the input width {n_input}"
        )
    mid = depth // 2
    ratio = code_size / n_input
    encoder = [max(code_size, round(n_input * ratio ** (k / mid))) for k in range(mid)]
    encoder[0] = n_input
    return encoder + [code_size] + encoder[::-1]


def build_autoencoder(
    lex: Lexicon, code_size=11, depth=7, seed=0, hidden_activation="identity"
) -> AutoencoderModel:
    """Untrained hourglass autoencoder bound to the given lexicon.

    The reconstruction layer is a softmax over the vocabulary. Hidden
    layers (bottleneck included) default to identity: with one-hot inputs
    and Glorot init, sigmoid stacks start with near-constant activations
    and need far more updates to differentiate the inputs, while the
    linear encoder trains quickly and its low-rank bottleneck still forces
    a compressed code. Pass hidden_activation="sigmoid" for the
    non-linear variant.
    """
    widths = hourglass_widths(len(lex), code_size, depth)
    activations = [hidden_activation] * (len(widths) - 2) + ["softmax"]
    rng = np.random.default_rng(seed)
    net = neural.init_network(widths, activations, rng)
    return AutoencoderModel(
        net=net,
        bottleneck_index=depth // 2 - 1,
        lexicon_fingerprint=lex.fingerprint(),
        code_size=code_size,
        depth=depth,
        seed=seed,
    )


def _check_binding(model: AutoencoderModel, lex: Lexicon):
    if model.lexicon_fingerprint != lex.fingerprint():
        raise BindingError("model was not built against this lexicon")


def encode(model: AutoencoderModel, lex: Lexicon, word_id: int) -> np.ndarray:
    """Bottleneck activation for one_hot(word_id); deterministic."""
    _check_binding(model, lex)
    a = one_hot(lex, word_id)
    for layer in model.net.layers[: model.bottleneck_index + 1]:
        a = neural._apply(layer.activation, a @ layer.W.T + layer.b)
    return a


def encode_all(model: AutoencoderModel, lex: Lexicon) -> np.ndarray:
    """Codes for every lexicon word, one row per word id."""
    _check_binding(model, lex)
    a = np.eye(len(lex))
    for layer in model.net.layers[: model.bottleneck_index + 1]:
        a = neural._apply(layer.activation, a @ layer.W.T + layer.b)
    return a


def train_autoencoder(
    model: AutoencoderModel,
    lex: Lexicon,
    config: TrainConfig,
    include_identity: bool = True,
) -> list:
    """Train on (variant -> standard) pairs; returns per-epoch loss trace.

    Standard words are also trained as identity pairs so that C itself is
    representable in code space.
    """
    _check_binding(model, lex)
    if not lex.standard_of:
        raise ConfigError("lexicon has no (non-standard, standard) pairs")
    inputs = list(lex.standard_of.keys())
    targets = list(lex.standard_of.values())
    if include_identity:
        inputs += list(lex.standard_ids)
        targets += list(lex.standard_ids)
    eye = np.eye(len(lex))
    X = eye[inputs]
    Y = eye[targets]
    return neural.train_supervised(model.net, X, Y, config, "cross-entropy")


def distance_Da(model, lex, a_i: int, a_j: int, vec_metric: str = "cosine") -> float:
    """Vector distance between the codes of two lexicon words."""
    d = vector_metric(vec_metric)
    return d(encode(model, lex, a_i), encode(model, lex, a_j))


def nearest_standard(source, lex, query_id: int, k: int = 5, vec_metric: str = "cosine"):
    """k standard words closest to the query, as (word_id, distance) pairs.

    ``source`` is either a trained AutoencoderModel (distance D_a) or an
    embedding matrix with one row per word id (distance D_c). Ties break
    by ascending word id; k beyond |C| truncates.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if isinstance(source, AutoencoderModel):
        codes = encode_all(source, lex)
    else:
        codes = np.asarray(source, dtype=float)
        if codes.shape[0] != len(lex):
            raise BindingError("embedding row count does not match the lexicon")
    d = vector_metric(vec_metric)
    query = codes[query_id]
    ranked = sorted(
        (float(d(query, codes[c])), c) for c in lex.standard_ids
    )
    return [(c, dist) for dist, c in ranked[:k]]


def save_autoencoder(model: AutoencoderModel, path, extra_metadata=None):
    """Persist the model with its lexicon binding and configuration."""
    container = {
        "kind": "autoencoder",
        "lexicon_fingerprint": model.lexicon_fingerprint,
        "code_size": model.code_size,
        "depth": model.depth,
        "bottleneck_index": model.bottleneck_index,
        "metadata": extra_metadata or {},
        "network": neural.network_to_dict(model.net, seed=model.seed),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(container, fh)


def load_autoencoder(path) -> AutoencoderModel:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("kind") != "autoencoder":
        raise ConfigError(f"not an autoencoder model file: {path}")
    net = neural.network_from_dict(data["network"])
    return AutoencoderModel(
        net=net,
        bottleneck_index=data["bottleneck_index"],
        lexicon_fingerprint=data["lexicon_fingerprint"],
        code_size=data["code_size"],
        depth=data["depth"],
        seed=data["network"].get("seed") or 0,
    )
