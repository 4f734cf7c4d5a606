"""
Registry of desk-scale network architectures.

Each entry stands in for a family of the larger models LUT-NA targets: an MLP,
a small VGG-style CNN and a CNN with one residual block.
"""

from typing import Any, Callable, Dict, List, Sequence

from ..errors import ConfigError
from .network import LayerSpec, Shape, infer_shapes


def mlp_layers(input_shape: Shape, n_classes: int, hidden: Sequence[int] = (64, 32)) -> List[LayerSpec]:
    """Fully connected relu stack; image inputs are flattened first."""
    layers: List[LayerSpec] = []
    if len(input_shape) > 1:
        layers.append(LayerSpec('flatten', name='flatten'))
    for i, units in enumerate(hidden):
        layers.append(LayerSpec('dense', units=units, name=f'fc{i + 1}'))
        layers.append(LayerSpec('relu', name=f'relu{i + 1}'))
    layers.append(LayerSpec('dense', units=n_classes, name='classifier'))
    return layers


def cnn_layers(input_shape: Shape, n_classes: int, channels: Sequence[int] = (8, 16)) -> List[LayerSpec]:
    """conv-relu-maxpool blocks followed by a dense classifier."""
    layers: List[LayerSpec] = []
    for i, width in enumerate(channels):
        layers.append(LayerSpec('conv2d', units=width, kernel=3, padding=1, name=f'conv{i + 1}'))
        layers.append(LayerSpec('relu', name=f'relu{i + 1}'))
        layers.append(LayerSpec('maxpool', kernel=2, name=f'pool{i + 1}'))
    layers.append(LayerSpec('flatten', name='flatten'))
    layers.append(LayerSpec('dense', units=n_classes, name='classifier'))
    return layers


def resnet_layers(input_shape: Shape, n_classes: int, width: int = 8) -> List[LayerSpec]:
    """Stem conv plus one residual block (two convs and an identity skip)."""
    return [
        LayerSpec('conv2d', units=width, kernel=3, padding=1, name='stem'),
        LayerSpec('relu', name='stem_relu'),
        # tensor 2 is the block input
        LayerSpec('conv2d', units=width, kernel=3, padding=1, name='block_conv1'),
        LayerSpec('relu', name='block_relu1'),
        LayerSpec('conv2d', units=width, kernel=3, padding=1, name='block_conv2'),
        LayerSpec('add', skip_from=2, name='block_add'),
        LayerSpec('relu', name='block_relu2'),
        LayerSpec('avgpool', kernel=2, name='pool'),
        LayerSpec('flatten', name='flatten'),
        LayerSpec('dense', units=n_classes, name='classifier'),
    ]


class ArchitectureRegistry:
    """Registry for all available desk-scale architectures."""

    def __init__(self):
        self._architectures: Dict[str, Dict[str, Any]] = {
            'mlp': {
                'builder': mlp_layers,
                'description': 'Two hidden dense layers with relu',
                'needs_image': False,
            },
            'cnn': {
                'builder': cnn_layers,
                'description': 'Two conv-relu-maxpool blocks and a dense classifier (VGG-like)',
                'needs_image': True,
            },
            'resnet': {
                'builder': resnet_layers,
                'description': 'Stem conv and one residual block (ResNet-like)',
                'needs_image': True,
            },
        }

    def get_all_architecture_names(self) -> List[str]:
        return list(self._architectures.keys())

    def get_cli_choices(self) -> List[str]:
        return self.get_all_architecture_names()

    def get_architecture_description(self, name: str) -> str:
        return self._architectures.get(name, {}).get('description', 'Unknown architecture')

    def get_builder(self, name: str) -> Callable[..., List[LayerSpec]]:
        if name not in self._architectures:
            raise ConfigError(f"unknown architecture '{name}'")
        return self._architectures[name]['builder']

    def build(self, name: str, input_shape: Shape, n_classes: int) -> List[LayerSpec]:
        """
        Layer list of ``name`` for the given input shape and class count.

        Raises:
            ConfigError: If the name is unknown, the class count is below 2 or
                an image architecture gets flat input
        """
        if n_classes < 2:
            raise ConfigError(f"need at least 2 classes, got {n_classes}")
        builder = self.get_builder(name)
        if self._architectures[name]['needs_image'] and len(input_shape) != 3:
            raise ConfigError(f"architecture '{name}' needs (C, H, W) input, got {tuple(input_shape)}")
        layers = builder(tuple(input_shape), n_classes)
        infer_shapes(tuple(input_shape), layers)
        return layers


# Global registry instance
ARCHITECTURE_REGISTRY = ArchitectureRegistry()
