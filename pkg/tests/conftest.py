"""Shared fixtures: small posets and labelings built once per session."""

from __future__ import annotations

import pytest

from whitneydual import (
    build_flyn,
    build_pointed,
    build_spanning_forest_poset,
    build_weighted,
    label_lambda_bullet,
    label_lambda_bullet2,
    label_lambda_w,
)
from whitneydual.reproduce import figure_example_posets


@pytest.fixture(scope="session")
def weighted():
    return {n: build_weighted(n) for n in range(1, 5)}


@pytest.fixture(scope="session")
def pointed():
    return {n: build_pointed(n) for n in range(1, 5)}


@pytest.fixture(scope="session")
def sf():
    return {n: build_spanning_forest_poset(n) for n in range(1, 5)}


@pytest.fixture(scope="session")
def flyn():
    return {
        (n, flavor): build_flyn(n, flavor)
        for n in range(1, 5)
        for flavor in ("pointed", "weighted")
    }


@pytest.fixture(scope="session")
def lw(weighted):
    return {n: label_lambda_w(weighted[n]) for n in weighted}


@pytest.fixture(scope="session")
def lb(pointed):
    return {n: label_lambda_bullet(pointed[n]) for n in pointed}


@pytest.fixture(scope="session")
def lb2(pointed):
    return {n: label_lambda_bullet2(pointed[n]) for n in pointed}


@pytest.fixture(scope="session")
def figure_posets():
    return figure_example_posets()
