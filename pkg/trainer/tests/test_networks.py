import pytest
import torch

from seahaze_trainer.config import ConfigurationError
from seahaze_trainer.networks import (
    EdgeNet,
    Generator,
    ParamNet,
    PatchDiscriminator,
    TransmissionNet,
)
from seahaze_trainer.physics import restore_images


def bottleneck_spatial(net, size):
    """Spatial extent of the deepest encoder feature for a probe input."""
    captured = {}

    def hook(module, args, output):
        captured["shape"] = tuple(output.shape)

    handle = net.enc_transitions[-1].register_forward_hook(hook)
    with torch.no_grad():
        net(torch.rand(1, 3, size, size))
    handle.remove()
    return captured["shape"][-2:]


class TestTransmissionNet:
    def test_shape_and_range_at_256(self):
        net = TransmissionNet(256, base=6, growth=4)
        with torch.no_grad():
            t = net(torch.rand(1, 3, 256, 256))
        assert t.shape == (1, 3, 256, 256)
        assert 0.0 < t.min().item() and t.max().item() < 1.0

    def test_bottleneck_is_input_over_128(self):
        net = TransmissionNet(256, base=4, growth=2)
        assert net.downsample_factor == 128
        assert bottleneck_spatial(net, 256) == (2, 2)

    def test_doubling_input_doubles_bottleneck(self):
        net = TransmissionNet(512, base=4, growth=2)
        assert bottleneck_spatial(net, 512) == (4, 4)

    def test_toy_64_uses_six_stages(self):
        net = TransmissionNet(64, base=4, growth=2)
        assert net.n_down == 6
        with torch.no_grad():
            t = net(torch.rand(1, 3, 64, 64))
        assert t.shape == (1, 3, 64, 64)

    def test_indivisible_size_rejected(self):
        with pytest.raises(ConfigurationError):
            TransmissionNet(100)
        net = TransmissionNet(256, base=4, growth=2)
        with pytest.raises(ConfigurationError):
            net(torch.rand(1, 3, 96, 96))


class TestParamNet:
    def test_output_vector_in_unit_interval(self):
        net = ParamNet()
        with torch.no_grad():
            v = net(torch.rand(1, 3, 256, 256))
        assert v.shape == (1, 6)
        assert 0.0 < v.min().item() and v.max().item() < 1.0

    def test_batching_shape(self):
        net = ParamNet(64)
        with torch.no_grad():
            v = net(torch.rand(3, 3, 64, 64))
        assert v.shape == (3, 6)

    def test_distinct_inputs_distinct_outputs(self):
        torch.manual_seed(0)
        net = ParamNet(64)
        with torch.no_grad():
            a = net(torch.zeros(1, 3, 64, 64))
            b = net(torch.ones(1, 3, 64, 64))
        assert not torch.allclose(a, b)


class TestEdgeNet:
    def test_shape_and_range(self):
        net = EdgeNet(base=6, growth=4)
        with torch.no_grad():
            out = net(torch.rand(1, 3, 64, 64))
        assert out.shape == (1, 3, 64, 64)
        assert 0.0 <= out.min().item() and out.max().item() <= 1.0

    def test_identity_at_initialization(self):
        torch.manual_seed(0)
        net = EdgeNet(base=6, growth=4)
        e_coarse = torch.rand(1, 3, 32, 32, dtype=torch.float64) * 0.9 + 0.05
        net.double()
        with torch.no_grad():
            out = net(e_coarse)
        assert (out - e_coarse).abs().max().item() <= 1e-5

    def test_out_of_range_coarse_input_is_squashed(self):
        net = EdgeNet(base=6, growth=4)
        wild = torch.randn(1, 3, 32, 32) * 10.0
        with torch.no_grad():
            out = net(wild)
        assert 0.0 <= out.min().item() and out.max().item() <= 1.0


class TestGenerator:
    def test_coarse_equals_physics_layer_exactly(self):
        torch.manual_seed(4)
        gen = Generator(64, base=6, growth=4)
        degraded = torch.rand(1, 3, 64, 64)
        with torch.no_grad():
            out = gen(degraded)
            redo = restore_images(
                degraded, out.t_hat, out.cb_hat[:, :3], out.cb_hat[:, 3:]
            )
        assert torch.equal(out.e_coarse, redo)

    def test_output_invariants(self):
        torch.manual_seed(4)
        gen = Generator(64, base=6, growth=4)
        with torch.no_grad():
            out = gen(torch.rand(2, 3, 64, 64))
        assert 0.0 < out.t_hat.min().item() and out.t_hat.max().item() < 1.0
        assert 0.0 < out.cb_hat.min().item() and out.cb_hat.max().item() < 1.0
        assert 0.0 <= out.e_final.min().item() and out.e_final.max().item() <= 1.0


class TestPatchDiscriminator:
    def test_patch_logit_map(self):
        net = PatchDiscriminator(base=8)
        with torch.no_grad():
            logits = net(torch.rand(1, 3, 256, 256))
        assert logits.shape == (1, 1, 16, 16)
