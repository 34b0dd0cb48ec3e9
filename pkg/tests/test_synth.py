import dataclasses

import pytest

from gpindex.errors import ModelError, SchemaError
from gpindex.metrics import extract_metrics
from gpindex.report import serialize_session
from gpindex.synth import (
    SplitMix64,
    default_demo_manifest,
    generate_corpus,
    generate_session,
    load_manifest,
)
from gpindex.telemetry import parse_session


class TestSplitMix64:
    def test_reference_vectors_seed_zero(self):
        rng = SplitMix64(0)
        assert [rng.next_u64() for _ in range(4)] == [
            0xE220A8397B1DCDAF,
            0x6E789E6AA1B965F4,
            0x06C45D188009454F,
            0xF88BB8A8724C81EC,
        ]

    def test_matches_independent_reimplementation(self):
        def reference(seed, n):
            m = 2**64
            state = seed % m
            out = []
            for _ in range(n):
                state = (state + 0x9E3779B97F4A7C15) % m
                z = state
                z = ((z ^ (z // 2**30)) * 0xBF58476D1CE4E5B9) % m
                z = ((z ^ (z // 2**27)) * 0x94D049BB133111EB) % m
                out.append(z ^ (z // 2**31))
            return out

        rng = SplitMix64(987654321)
        assert [rng.next_u64() for _ in range(50)] == reference(987654321, 50)

    def test_floats_in_unit_interval(self):
        rng = SplitMix64(7)
        values = [rng.next_float() for _ in range(1000)]
        assert all(0.0 <= v < 1.0 for v in values)


class TestGenerateSession:
    def test_zero_jitter_recovers_model(self, reference_model, reference_session):
        ms = extract_metrics(reference_session)
        assert ms.avg_fps == pytest.approx(60.0, abs=0.1)
        assert ms.fps_stability == 1.0
        assert ms.drain_rate == pytest.approx(
            reference_model.drain_rate_pct_per_hour, abs=0.1
        )
        assert ms.launch_time == pytest.approx(reference_model.launch_s, abs=0.01)
        assert ms.median_touch_latency == pytest.approx(
            reference_model.touch_latency_ms, abs=0.5
        )
        assert ms.peak_temp == reference_model.temp_peak_c
        assert ms.temp_rise == pytest.approx(
            reference_model.temp_peak_c - reference_model.temp_start_c
        )

    def test_throttle_halves_rate_midway(self, reference_model):
        model = dataclasses.replace(
            reference_model, throttle_onset_s=300.0, throttle_factor=2.0
        )
        session = generate_session(model, 600)
        # oracle: closed-form frame count, 300 s at 60 fps plus 300 s at 30 fps
        expected_avg = (300 * 60 + 300 * 30) / 600
        ms = extract_metrics(session)
        assert ms.avg_fps == pytest.approx(expected_avg, abs=0.2)
        assert len(session.frames) == pytest.approx(300 * 60 + 300 * 30, abs=2)

    def test_same_seed_same_bytes(self, reference_model):
        a = serialize_session(generate_session(reference_model, 600))
        b = serialize_session(generate_session(reference_model, 600))
        assert a == b

    def test_different_seed_differs(self, reference_model):
        jittery = dataclasses.replace(reference_model, frame_jitter_sd_ms=1.0)
        other = dataclasses.replace(jittery, seed=jittery.seed + 1)
        assert generate_session(jittery, 600) != generate_session(other, 600)

    def test_generated_sessions_parse_and_validate(self, reference_model):
        jittery = dataclasses.replace(
            reference_model, frame_jitter_sd_ms=2.0, throttle_onset_s=200.0, throttle_factor=1.7
        )
        for model in (reference_model, jittery):
            session = generate_session(model, 240)
            assert parse_session(serialize_session(session)) == session

    def test_touch_jitter_within_ten_percent(self, reference_session, reference_model):
        true = reference_model.touch_latency_ms
        for event in reference_session.touch:
            assert abs(event.latency_ms - true) <= 0.1 * true + 1e-9

    def test_battery_floors_at_zero(self, reference_model):
        greedy = dataclasses.replace(reference_model, drain_rate_pct_per_hour=1000.0)
        session = generate_session(greedy, 600)
        assert session.battery[-1].level_pct == 0.0

    def test_duration_too_short(self, reference_model):
        with pytest.raises(ModelError, match="duration"):
            generate_session(reference_model, 60)

    @pytest.mark.parametrize(
        "field,value",
        [
            ("base_frame_time_ms", 0.0),
            ("throttle_factor", 0.5),
            ("drain_rate_pct_per_hour", -1.0),
            ("temp_peak_c", 10.0),
            ("touch_latency_ms", -5.0),
        ],
    )
    def test_model_invariants(self, reference_model, field, value):
        with pytest.raises(ModelError):
            dataclasses.replace(reference_model, **{field: value})


class TestManifest:
    def test_default_demo_manifest(self):
        corpus = default_demo_manifest()
        assert len(corpus) == 9
        assert all(d.sessions == 3 for d in corpus)
        ids = [d.model.device_id for d in corpus]
        assert ids == sorted(ids)
        a = next(d.model for d in corpus if d.model.device_id == "device_a")
        b = next(d.model for d in corpus if d.model.device_id == "device_b")
        assert dataclasses.replace(a, device_id="x") == dataclasses.replace(b, device_id="x")

    def test_generate_corpus_counts_and_seeds(self):
        corpus = default_demo_manifest()[:2]
        generated = generate_corpus(corpus)
        assert set(generated) == {"device_a", "device_b"}
        assert all(len(v) == 3 for v in generated.values())
        # per-session seeds diverge within a device, a/b pairs stay identical
        a_sessions, b_sessions = generated["device_a"], generated["device_b"]
        for sa, sb in zip(a_sessions, b_sessions):
            assert sa.frames == sb.frames
            assert sa.touch == sb.touch

    def test_manifest_schema_errors(self):
        with pytest.raises(SchemaError, match="schema_version"):
            load_manifest(b'{"schema_version": 9, "devices": []}')
        with pytest.raises(SchemaError, match="devices"):
            load_manifest(b'{"schema_version": 1, "devices": []}')
        with pytest.raises(SchemaError, match="seed"):
            load_manifest(
                b'{"schema_version": 1, "devices": [{"sessions": 1, '
                b'"session_duration_s": 300, "model": {"device_id": "x", '
                b'"base_frame_time_ms": 16.0, "drain_rate_pct_per_hour": 10, '
                b'"temp_start_c": 25, "temp_peak_c": 30, "touch_latency_ms": 50, '
                b'"launch_s": 5}}]}'
            )
        with pytest.raises(SchemaError, match="unknown"):
            load_manifest(
                b'{"schema_version": 1, "devices": [{"sessions": 1, '
                b'"session_duration_s": 300, "model": {"device_id": "x", '
                b'"base_frame_time_ms": 16.0, "drain_rate_pct_per_hour": 10, '
                b'"temp_start_c": 25, "temp_peak_c": 30, "touch_latency_ms": 50, '
                b'"launch_s": 5, "seed": 1, "bogus": 2}}]}'
            )
