from __future__ import annotations

import pytest

from src.oracle import JointLaw, enumerate_joint
from src.outcome import OutcomeModel, chess, classical


@pytest.fixture
def classical_model() -> OutcomeModel:
    return classical()


@pytest.fixture
def chess_model() -> OutcomeModel:
    return chess()


@pytest.fixture(scope="session")
def classical_joint_3() -> JointLaw:
    return enumerate_joint(classical(), 3)


@pytest.fixture(scope="session")
def classical_joint_4() -> JointLaw:
    return enumerate_joint(classical(), 4)


@pytest.fixture(scope="session")
def chess_joint_4() -> JointLaw:
    return enumerate_joint(chess(), 4)


@pytest.fixture(scope="session")
def chess_joint_5() -> JointLaw:
    return enumerate_joint(chess(), 5)
