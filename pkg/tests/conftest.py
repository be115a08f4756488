from __future__ import annotations

import pytest

from wsetoid.signatures import (
    SIGNATURES,
    NamedSignature,
    bintree_signature,
    nat_signature,
    nonext_signature,
)


@pytest.fixture
def nat() -> NamedSignature:
    return nat_signature()


@pytest.fixture
def bintree() -> NamedSignature:
    return bintree_signature()


@pytest.fixture
def nonext() -> NamedSignature:
    return nonext_signature()


@pytest.fixture
def list_codiscrete() -> NamedSignature:
    return SIGNATURES["list_codiscrete2"]()


@pytest.fixture
def list_discrete() -> NamedSignature:
    return SIGNATURES["list_discrete2"]()


@pytest.fixture(params=sorted(SIGNATURES))
def named(request: pytest.FixtureRequest) -> NamedSignature:
    return SIGNATURES[request.param]()
