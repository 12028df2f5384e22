# Copyright 2026 The mqpt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import mqpt


def test_coherent_moments_are_powers():
    a = 0.3 + 0.4j
    t = mqpt.coherent_moments(a, 3)
    assert t.shape == (4, 4)
    j, k = np.meshgrid(range(4), range(4), indexing="ij")
    np.testing.assert_allclose(t, a**j * np.conj(a) ** k, atol=1e-14)


def test_catalog_attenuation_is_diagonal():
    t = mqpt.catalog_tensor({"kind": "attenuation", "eta": 0.7}, 3, 3)
    assert t.shape == (4, 4, 4, 4)
    for j in range(4):
        for k in range(4):
            assert t[j, k, j, k] == pytest.approx(0.7 ** (j + k))
    assert np.count_nonzero(np.abs(t) > 0) == 16


def test_apply_tensor_matches_output_moments():
    spec = {"kind": "displacement", "beta": [0.3, 0.2]}
    a = -0.5 + 0.1j
    out = mqpt.apply_tensor(mqpt.catalog_tensor(spec, 3, 3), mqpt.coherent_moments(a, 3))
    np.testing.assert_allclose(out, mqpt.output_moments(spec, a, 3), atol=1e-12)


def test_estimate_matches_catalog():
    spec = {"kind": "photon_sub"}
    est, cond = mqpt.estimate_tensor(spec, 3, 3)
    assert cond < 1e10
    exact = mqpt.catalog_tensor(spec, 3, 3)
    assert np.max(np.abs(est - exact)) < 1e-9


def test_estimate_from_python_callable():
    eta = 0.5

    def response(alpha):
        return mqpt.coherent_moments([eta * alpha[0]], 2)

    est, _ = mqpt.estimate_tensor(response, 2, 2)
    exact = mqpt.catalog_tensor({"kind": "attenuation", "eta": eta}, 2, 2)
    assert np.max(np.abs(est - exact)) < 1e-9


def test_identify_gaussian_round_trip():
    rng = np.random.default_rng(4)
    S = rng.uniform(-1, 1, (2, 2))
    D = rng.uniform(-1, 1, 2)
    A = rng.uniform(-1, 1, (2, 2))
    E = A.T @ A / 10
    probes = mqpt.default_probes(1)
    means = [S @ np.array([p[0].real, p[0].imag]) + D for p in probes]
    out = mqpt.identify_gaussian(probes, means, S @ S.T / 4 + E)
    np.testing.assert_allclose(out["S"], S, atol=1e-10)
    np.testing.assert_allclose(out["E_noise"], E, atol=1e-10)
    np.testing.assert_allclose(out["D"], D, atol=1e-10)
    with pytest.raises(mqpt.Error, match="under_determined"):
        mqpt.identify_gaussian(probes[:2], means[:2], S @ S.T / 4 + E)


def test_nonclassicality():
    assert mqpt.mandel_q(mqpt.fock_moments(3, 2)) == -1.0
    assert mqpt.mandel_q(mqpt.coherent_moments(1.2, 2)) == pytest.approx(0.0, abs=1e-12)
    assert mqpt.decoherence_variance(2.0, 1.0, 0.0) == 0.25
    q = mqpt.q_after_nla(2.0, 0.3, mqpt.coherent_moments(0.5, 2))
    assert q == pytest.approx(4 * 0.25 * 0.7, abs=1e-12)


def test_fock_round_trip():
    L = 4
    fock = np.zeros((L + 1,) * 4, dtype=complex)
    for m in range(1, L + 1):
        for n in range(1, L + 1):
            fock[m - 1, n - 1, m, n] = math.sqrt(m * n)
    moments, tail = mqpt.fock_to_moment(fock, L, L, math.inf)
    np.testing.assert_allclose(mqpt.moment_to_fock(moments, L), fock, atol=1e-9)
    assert tail >= 0


def test_run_config_report():
    report = mqpt.run({"experiment": "tomography", "process": {"kind": "attenuation", "eta": 0.7}})
    assert report["comparison"]["max_abs_error"] <= 1e-9
    with pytest.raises(mqpt.Error, match="config_error: process.eta"):
        mqpt.run({"experiment": "tomography", "process": {"kind": "attenuation"}})
