"""JSON round trips, canonical rendering, and schema rejection paths."""

import json

import pytest

from conftest import REFERENCE_POINTS_D6

from sheafloci.errors import ConfigError
from sheafloci.kronecker import kronecker_from_points, maximal_minors
from sheafloci.linsys import ProjSubspace, fibre
from sheafloci.localfree import CurveGerm, FatIdealData
from sheafloci.poly import parse_homogeneous, parse_local
from sheafloci.schemes import SimplePoint, PointConfig, random_config
from sheafloci.singloci import locus_report
from sheafloci.serialize import (
    canonical_dumps,
    config_from_dict,
    config_to_dict,
    genericity_error_to_dict,
    germ_query_from_dict,
    localfree_result_to_dict,
    report_to_dict,
    resolution_to_dict,
    subspace_to_dict,
    validate_payload,
)


def reference_config() -> PointConfig:
    return PointConfig.of(6, [SimplePoint.of(*p) for p in REFERENCE_POINTS_D6])


class TestConfigPayload:
    def test_round_trip_simple(self):
        cfg = reference_config()
        again = config_from_dict(config_to_dict(cfg))
        assert again == cfg

    def test_round_trip_double_stratum(self):
        cfg = random_config(5, seed=7, stratum="double")
        d = config_to_dict(cfg)
        assert len(d["fat"]) == 1
        assert d["fat"][0]["mult"] == 2
        assert config_from_dict(d) == cfg

    def test_fat_h_starts_at_linear_term(self):
        # the file format drops the constant coefficient, which is always 0
        cfg = random_config(5, seed=7, stratum="double")
        fp = cfg.fat[0]
        d = config_to_dict(cfg)
        emitted = d["fat"][0]["h"]
        assert len(emitted) == len(fp.h) - 1 if fp.h else emitted == []
        rebuilt = config_from_dict(d)
        assert rebuilt.fat[0].h == fp.h

    def test_rationals_survive(self):
        cfg = PointConfig.of(
            4, [SimplePoint.of("1/3", "-2/7", 1), SimplePoint.of(0, 1, "5/2"),
                SimplePoint.of(1, 0, 0)]
        )
        again = config_from_dict(config_to_dict(cfg))
        assert again.simple[0].coords == cfg.simple[0].coords

    def test_rejects_zero_denominator(self):
        d = config_to_dict(reference_config())
        d["simple"][0][0] = "1/0"
        with pytest.raises(ConfigError, match="config"):
            config_from_dict(d)

    def test_rejects_missing_and_extra_fields(self):
        d = config_to_dict(reference_config())
        del d["fat"]
        with pytest.raises(ConfigError):
            config_from_dict(d)
        d = config_to_dict(reference_config())
        d["comment"] = "hello"
        with pytest.raises(ConfigError):
            config_from_dict(d)

    def test_rejects_low_multiplicity(self):
        cfg = random_config(5, seed=7, stratum="double")
        d = config_to_dict(cfg)
        d["fat"][0]["mult"] = 1
        with pytest.raises(ConfigError, match="mult"):
            config_from_dict(d)

    def test_semantic_validation_still_applies(self):
        # schema-valid payloads still go through configuration checks
        d = config_to_dict(reference_config())
        d["simple"] = d["simple"][:9]
        with pytest.raises(ConfigError, match="10"):
            config_from_dict(d)


class TestCanonicalDumps:
    def test_sorted_and_terminated(self):
        text = canonical_dumps({"b": 1, "a": 2})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')

    def test_insertion_order_invariance(self):
        cfg = random_config(4, seed=3)
        d = config_to_dict(cfg)
        shuffled = {k: d[k] for k in reversed(list(d))}
        assert canonical_dumps(shuffled) == canonical_dumps(d)

    def test_round_trips_through_json(self):
        d = config_to_dict(reference_config())
        assert json.loads(canonical_dumps(d)) == d


class TestResolutionPayload:
    def test_shapes_and_checks(self):
        cfg = random_config(4, seed=11)
        res = kronecker_from_points(cfg)
        d = resolution_to_dict(res)
        assert d["degree"] == 4
        assert len(d["phi"]) == 3 and all(len(row) == 2 for row in d["phi"])
        assert len(d["generators"]) == 3
        assert d["injective"] is True
        assert d["stable"] is True

    def test_minors_match_text(self):
        cfg = random_config(4, seed=11)
        res = kronecker_from_points(cfg)
        d = resolution_to_dict(res)
        minors = maximal_minors(res.phi)
        parsed = [parse_homogeneous(t) for t in d["minors"]]
        assert parsed == list(minors)

    def test_generators_parse_at_right_degree(self):
        cfg = random_config(5, seed=2)
        d = resolution_to_dict(kronecker_from_points(cfg))
        for text in d["generators"]:
            assert parse_homogeneous(text).degree == 3


class TestReportAndSubspace:
    def test_report_payload(self):
        fib = fibre(random_config(4, seed=5))
        rep = locus_report(fib, pairs=True, triples=True)
        d = report_to_dict(rep)
        assert d["fibre_dim"] == 11
        assert [p["codim"] for p in d["points"]] == [2, 2, 2]
        assert len(d["pairs"]) == 3 and len(d["triples"]) == 1
        assert d["violations"] == []
        json.loads(canonical_dumps(d))

    def test_subspace_payload(self):
        sub = ProjSubspace.whole(5).cut_by([[1, 0, 0, 0, 0, 0]], 5)
        d = subspace_to_dict(sub)
        assert d == {
            "ambient": 5,
            "codim": 1,
            "functionals": [["1", "0", "0", "0", "0", "0"]],
        }


class TestLocalFreePayloads:
    def test_query_round_trip(self):
        germ, data, trunc = germ_query_from_dict(
            {"f": "x^2 - y^3", "h": ["0", "1"], "mult": 2, "truncation": 12}
        )
        assert germ.f == parse_local("x^2 - y^3")
        assert data.h == (0, 1)
        assert trunc == 12

    def test_query_requires_zero_constant(self):
        with pytest.raises(ConfigError, match="h"):
            germ_query_from_dict({"f": "x*y", "h": ["1"], "mult": 2})

    def test_result_for_node(self):
        germ = CurveGerm(parse_local("x*y"))
        data = FatIdealData.of([0], 2)
        d = localfree_result_to_dict(germ, data)
        assert d["membership"] is True
        assert d["regular"] is False
        assert d["u_at_zero"] == "0"
        assert d["free"] is False
        assert d["jet_free"] is False

    def test_result_for_transverse_branch(self):
        germ = CurveGerm(parse_local("x^2 - y^2"))
        data = FatIdealData.of([0], 2)
        d = localfree_result_to_dict(germ, data)
        assert d["u_at_zero"] == "1"
        assert d["free"] is True and d["jet_free"] is True

    def test_result_without_membership(self):
        germ = CurveGerm(parse_local("y - x^2"))
        data = FatIdealData.of([0], 2)
        d = localfree_result_to_dict(germ, data)
        assert d["membership"] is False
        assert d["u_at_zero"] is None
        assert d["free"] is None and d["jet_free"] is None

    def test_result_text_round_trips(self):
        germ = CurveGerm(parse_local("x^2 - y^3 + 2*x*y^2"))
        d = localfree_result_to_dict(germ, FatIdealData.of([0, 1], 2))
        assert parse_local(d["f"]) == germ.f


class TestGenericityErrorPayload:
    def test_with_certificate(self):
        cert = parse_homogeneous("x0^2 - x1*x2")
        d = genericity_error_to_dict("points lie on a conic", cert)
        assert d["error"] == "genericity"
        assert parse_homogeneous(d["certificate"]).degree == 2

    def test_without_certificate(self):
        d = genericity_error_to_dict("no certificate available", None)
        assert d["certificate"] is None


class TestValidatePayload:
    def test_unknown_entries_rejected_everywhere(self):
        with pytest.raises(ConfigError, match="report"):
            validate_payload({"degree": 4}, "report")

    def test_error_names_offending_path(self):
        d = config_to_dict(reference_config())
        d["simple"][3][1] = "half"
        with pytest.raises(ConfigError, match="simple/3/1"):
            config_from_dict(d)
