"""Input validation shared by the estimators."""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np


def check_texts(X) -> list[str]:
    """Coerce ``X`` to a list of strings.

    Accepts any iterable of ``str`` (lists, tuples, 1-d arrays, pandas
    Series). A bare string is rejected since iterating it would yield
    single characters.
    """
    if isinstance(X, (str, bytes)):
        raise TypeError(
            "expected an iterable of strings, got a single string; wrap it in a list"
        )
    if isinstance(X, np.ndarray):
        if X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        elif X.ndim != 1:
            raise ValueError(f"expected a 1-d array of strings, got shape {X.shape}")
    if not isinstance(X, Iterable):
        raise TypeError(f"expected an iterable of strings, got {type(X).__name__}")
    texts = list(X)
    for i, t in enumerate(texts):
        if not isinstance(t, str):
            raise TypeError(f"element {i} is {type(t).__name__}, not str")
    return texts


def check_choice(name: str, value, choices) -> None:
    if value not in choices:
        raise ValueError(f"{name}={value!r} is not one of {sorted(choices)}")


def check_bool(name: str, value) -> None:
    if not isinstance(value, (bool, np.bool_)):
        raise TypeError(f"{name} must be a bool, got {type(value).__name__}")
