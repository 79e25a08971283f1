from x0plus import coords, golden


def test_fixture_model_maps_onto_reference(model137, points137):
    Ts = coords.match_coordinates(model137, points137, golden.golden_model(), golden.golden_points())
    assert len(Ts) == 1
    T = Ts[0]
    assert sorted(coords.apply(T, p) for p in points137) == golden.golden_points()


def test_no_match_for_wrong_point_count(model137, points137):
    assert coords.match_coordinates(model137, points137[:-1], golden.golden_model(), golden.golden_points()) == []
