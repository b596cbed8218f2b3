import math

import numpy as np
import pytest
from skimage.metrics import structural_similarity as skimage_ssim

from seahaze.errors import ShapeMismatchError
from seahaze.metrics import (
    METRIC_NAMES,
    MetricReport,
    UIQM_WEIGHT_COLORFULNESS,
    UIQM_WEIGHT_CONTRAST,
    UIQM_WEIGHT_SHARPNESS,
    blur_metric,
    compute_report,
    mse,
    pcqi,
    psnr,
    psnr_from_mse,
    ssim,
    uiqm,
)

from conftest import checkerboard, random_image


def naive_mse(a, b):
    """Double-loop reference on the 0..255 scale."""
    h, w, c = a.shape
    total = 0.0
    for i in range(h):
        for j in range(w):
            for k in range(c):
                d = 255.0 * (a[i][j][k] - b[i][j][k])
                total += d * d
    return total / (h * w * c)


def luma255(img):
    return 255.0 * (0.299 * img[:, :, 0] + 0.587 * img[:, :, 1] + 0.114 * img[:, :, 2])


class TestMse:
    def test_identical_images(self, rng):
        a = random_image(rng)
        assert mse(a, a) == 0.0

    def test_black_versus_white(self):
        assert mse(np.zeros((8, 8, 3)), np.ones((8, 8, 3))) == 255.0**2

    def test_one_level_offset(self):
        a = np.full((8, 8, 3), 0.25)
        assert abs(mse(a, a + 1.0 / 255.0) - 1.0) < 1e-9

    def test_matches_naive_reference(self, rng):
        for _ in range(5):
            a = random_image(rng, 8, 8)
            b = random_image(rng, 8, 8)
            fast = mse(a, b)
            slow = naive_mse(a, b)
            assert abs(fast - slow) <= 1e-12 * slow

    def test_shape_mismatch_rejected(self, rng):
        with pytest.raises(ShapeMismatchError):
            mse(random_image(rng, 8, 8), random_image(rng, 8, 9))


class TestPsnr:
    def test_black_versus_white_is_zero_db(self):
        assert psnr(np.zeros((4, 4, 3)), np.ones((4, 4, 3))) == 0.0

    def test_identical_images_are_infinite(self, rng):
        a = random_image(rng)
        assert math.isinf(psnr(a, a))

    def test_exact_relation_with_mse(self, rng):
        a = random_image(rng, 12, 12)
        b = random_image(rng, 12, 12)
        err = mse(a, b)
        assert psnr(a, b) == 10.0 * math.log10(255.0**2 / err)

    def test_monotone_decreasing_in_mse(self):
        values = [psnr_from_mse(m) for m in (0.5, 1.0, 10.0, 100.0, 1000.0)]
        assert all(x > y for x, y in zip(values, values[1:]))

    def test_published_pair_reporting_scale(self):
        # Published (MSE, PSNR) pairs consistent with a x1000 reporting
        # scale: psnr(1000 * mse_reported) reproduces the PSNR column.
        pairs = [
            (0.1919, 25.2999),
            (0.75428, 19.3555),
            (0.37774, 22.3589),
            (0.83377, 18.9203),
            (6.461, 10.0278),
            (2.9314, 13.46),
            (0.48124, 21.3072),
            (5.7757, 10.5148),
        ]
        for mse_reported, psnr_reported in pairs:
            assert abs(psnr_from_mse(1000.0 * mse_reported) - psnr_reported) < 0.01


class TestSsim:
    def test_self_similarity(self, rng):
        a = random_image(rng, 24, 24)
        assert abs(ssim(a, a) - 1.0) < 1e-12

    def test_constant_pair(self):
        a = np.full((16, 16, 3), 0.5)
        assert abs(ssim(a, a.copy()) - 1.0) < 1e-12

    def test_inverted_structure_is_negative(self):
        a = checkerboard(32, 32, 4)
        assert ssim(a, 1.0 - a) < 0.0

    def test_matches_skimage_oracle(self, rng):
        for _ in range(5):
            a = random_image(rng, 32, 32)
            b = np.clip(a + rng.normal(0, 0.08, a.shape), 0.0, 1.0)
            ours = ssim(a, b)
            reference = skimage_ssim(
                luma255(a),
                luma255(b),
                gaussian_weights=True,
                sigma=1.5,
                use_sample_covariance=False,
                data_range=255.0,
            )
            assert abs(ours - reference) < 1e-7

    def test_undersized_image_rejected(self, rng):
        with pytest.raises(ValueError):
            ssim(random_image(rng, 8, 8), random_image(rng, 8, 8))


class TestPcqi:
    def test_self_score_is_one(self, rng):
        a = random_image(rng, 24, 24)
        assert abs(pcqi(a, a) - 1.0) < 1e-12

    def test_equal_constants_score_one(self):
        a = np.full((16, 16, 3), 0.33)
        assert abs(pcqi(a, a.copy()) - 1.0) < 1e-12

    def test_contrast_gain_scores_above_one(self, rng):
        base = random_image(rng, 32, 32)
        low = 0.5 + 0.2 * (base - 0.5)
        high = 0.5 + 0.9 * (base - 0.5)
        assert pcqi(low, high) > 1.0

    def test_contrast_loss_scores_below_one(self, rng):
        base = random_image(rng, 32, 32)
        low = 0.5 + 0.2 * (base - 0.5)
        high = 0.5 + 0.9 * (base - 0.5)
        assert pcqi(high, low) < 1.0

    def test_undersized_image_rejected(self, rng):
        with pytest.raises(ValueError):
            pcqi(random_image(rng, 10, 20), random_image(rng, 10, 20))


class TestBlurMetric:
    def test_constant_image_is_zero(self):
        assert blur_metric(np.full((32, 32, 3), 0.7)) == 0.0

    def test_blurring_increases_score(self):
        import cv2

        sharp = checkerboard(64, 64, 4)
        soft = cv2.GaussianBlur(sharp, (9, 9), 2.0)
        assert blur_metric(np.clip(soft, 0, 1)) > blur_metric(sharp)

    def test_range_on_random_images(self, rng):
        for _ in range(20):
            value = blur_metric(random_image(rng, 16, 16))
            assert 0.0 <= value <= 1.0

    def test_undersized_image_rejected(self, rng):
        with pytest.raises(ValueError):
            blur_metric(random_image(rng, 8, 8))


class TestUiqm:
    def test_weighted_combination(self, rng):
        a = random_image(rng, 32, 32)
        uicm, uism, uiconm, combined = uiqm(a)
        expected = (
            UIQM_WEIGHT_COLORFULNESS * uicm
            + UIQM_WEIGHT_SHARPNESS * uism
            + UIQM_WEIGHT_CONTRAST * uiconm
        )
        assert abs(combined - expected) <= 1e-12

    def test_weight_values(self):
        assert UIQM_WEIGHT_COLORFULNESS == 0.3282
        assert UIQM_WEIGHT_SHARPNESS == 0.2953
        assert UIQM_WEIGHT_CONTRAST == 3.5753
        assert abs((0.3282 + 0.2953 + 3.5753) - 4.1988) < 1e-12

    def test_gray_image_has_zero_colorfulness(self, rng):
        gray = np.repeat(rng.uniform(0.2, 0.8, (16, 16, 1)), 3, axis=2)
        uicm, _, _, _ = uiqm(gray)
        assert abs(uicm) < 1e-9

    def test_colorful_beats_gray(self, rng):
        gray = np.full((32, 32, 3), 0.5)
        colorful = random_image(rng, 32, 32)
        assert uiqm(colorful)[0] > uiqm(gray)[0]

    def test_undersized_image_rejected(self, rng):
        with pytest.raises(ValueError):
            uiqm(random_image(rng, 4, 4))


class TestReport:
    def test_inf_serializes_as_string(self):
        rep = MetricReport({"psnr": math.inf, "mse": 0.0})
        payload = rep.to_json_dict()
        assert payload["psnr"] == "inf"
        assert payload["mse"] == 0.0

    def test_column_order_stable(self):
        assert METRIC_NAMES == (
            "mse", "psnr", "ssim", "pcqi", "blur", "uicm", "uism", "uiconm", "uiqm",
        )

    def test_full_report_on_identical_pair(self, rng):
        a = random_image(rng, 24, 24)
        rep = compute_report(a, a)
        assert rep.entries["mse"] == 0.0
        assert math.isinf(rep.entries["psnr"])
        assert abs(rep.entries["ssim"] - 1.0) < 1e-12
        assert abs(rep.entries["pcqi"] - 1.0) < 1e-12
        assert set(rep.entries) == set(METRIC_NAMES)

    def test_no_reference_defaults(self, rng):
        rep = compute_report(random_image(rng, 24, 24))
        assert set(rep.entries) == {"blur", "uicm", "uism", "uiconm", "uiqm"}

    def test_uiqm_selection_populates_submeasures(self, rng):
        rep = compute_report(random_image(rng, 24, 24), metrics=("uiqm",))
        assert set(rep.entries) == {"uicm", "uism", "uiconm", "uiqm"}

    def test_full_reference_requires_reference(self, rng):
        with pytest.raises(ValueError):
            compute_report(random_image(rng, 24, 24), metrics=("mse",))
