import pytest

from x0plus import golden, ingest, model as model_mod, points


@pytest.fixture(scope="session")
def golden_model():
    return golden.golden_model()


@pytest.fixture(scope="session")
def golden_points():
    return golden.golden_points()


@pytest.fixture(scope="session")
def golden_labels():
    labels = dict(golden.golden_labels())
    labels[golden.EXCEPTIONAL] = "Exceptional"
    return labels


@pytest.fixture(scope="session")
def basis137():
    return ingest.load_level(137)


@pytest.fixture(scope="session")
def basis97():
    return ingest.load_level(97)


@pytest.fixture(scope="session")
def model137(basis137):
    return model_mod.build_model(basis137)


@pytest.fixture(scope="session")
def model97(basis97):
    return model_mod.build_model(basis97)


@pytest.fixture(scope="session")
def points137(model137):
    return points.search(model137, 25)


@pytest.fixture(scope="session")
def points97(model97):
    return points.search(model97, 50)
