import random

import pytest

from essencemap import (
    AttributeStatement,
    Concept,
    ObjectInstance,
    SemanticContext,
    bundled_path,
    load_annotations,
    load_concepts,
    load_lexicon,
)

_WORDS = (
    "requirements product backlog managing accepting states items grooming "
    "mechanism stakeholders opportunity vision whole bounds original concept "
    "definition ready done major evolve learned prioritized functionality "
    "is are must need progress continue provides refers the of and to be"
).split()


def make_random_context(rng: random.Random, index: int = 0) -> SemanticContext:
    """A small valid context with randomized shape and texts."""

    def text() -> str:
        words = [rng.choice(_WORDS) for _ in range(rng.randint(1, 8))]
        if rng.random() < 0.2:
            words.insert(rng.randrange(len(words) + 1), "#mark")
        if rng.random() < 0.2:
            words.append("value: 7")
        return " ".join(words)

    concepts = []
    for ci in range(rng.randint(1, 4)):
        attrs = tuple(
            AttributeStatement(f"a{ai + 1}", text()) for ai in range(rng.randint(1, 6))
        )
        objs = tuple(
            ObjectInstance(f"o{oi + 1}", text()) for oi in range(rng.randint(0, 3))
        )
        rel_in = tuple(
            f"ctx{rng.randint(0, 5)}/Other{rng.randint(0, 9)}"
            for _ in range(rng.randint(0, 2))
        )
        rel_out = tuple(
            f"ctx{rng.randint(0, 5)}/Other{rng.randint(0, 9)}"
            for _ in range(rng.randint(0, 2))
        )
        concepts.append(Concept(f"Concept{ci + 1}", attrs, objs, rel_in, rel_out))
    return SemanticContext(f"ctx{index}", tuple(concepts))


@pytest.fixture(scope="session")
def data_dir():
    return bundled_path("essence.concepts").parent


@pytest.fixture(scope="session")
def essence_context():
    return load_concepts(bundled_path("essence.concepts"))


@pytest.fixture(scope="session")
def scrum_context():
    return load_concepts(bundled_path("scrum.concepts"))


@pytest.fixture(scope="session")
def tuned_lexicon():
    return load_lexicon(bundled_path("paper.lex"))


@pytest.fixture(scope="session")
def table1_annotations(essence_context, scrum_context):
    return load_annotations(
        bundled_path("paper-table1.ann"), (essence_context, scrum_context)
    )
