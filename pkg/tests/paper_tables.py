"""Layer tables transcribed from the published evaluation (name, variables, bytes)."""

VGG16_TABLE = [
    ("vgg16-conv0-weight", 1728, "FLOAT", 6912),
    ("vgg16-conv1-weight", 36864, "FLOAT", 147456),
    ("vgg16-conv2-weight", 73728, "FLOAT", 294912),
    ("vgg16-conv3-weight", 147456, "FLOAT", 589824),
    ("vgg16-conv4-weight", 294912, "FLOAT", 1179648),
    ("vgg16-conv5-weight", 589824, "FLOAT", 2359296),
    ("vgg16-conv6-weight", 589824, "FLOAT", 2359296),
    ("vgg16-conv7-weight", 1179648, "FLOAT", 4718592),
    ("vgg16-conv8-weight", 2359296, "FLOAT", 9437184),
    ("vgg16-conv9-weight", 2359296, "FLOAT", 9437184),
    ("vgg16-conv10-weight", 2359296, "FLOAT", 9437184),
    ("vgg16-conv11-weight", 2359296, "FLOAT", 9437184),
    ("vgg16-conv12-weight", 2359296, "FLOAT", 9437184),
    ("vgg16-dense0-weight", 102760448, "FLOAT", 411041792),
    ("vgg16-dense1-weight", 16777216, "FLOAT", 67108864),
    ("vgg16-dense2-weight", 4096000, "FLOAT", 16384000),
]

VGG19_TABLE = [
    ("vgg19-conv0-weight", 1728, "FLOAT", 6912),
    ("vgg19-conv1-weight", 36864, "FLOAT", 147456),
    ("vgg19-conv2-weight", 73728, "FLOAT", 294912),
    ("vgg19-conv3-weight", 147456, "FLOAT", 589824),
    ("vgg19-conv4-weight", 294912, "FLOAT", 1179648),
    ("vgg19-conv5-weight", 589824, "FLOAT", 2359296),
    ("vgg19-conv6-weight", 589824, "FLOAT", 2359296),
    ("vgg19-conv7-weight", 589824, "FLOAT", 2359296),
    ("vgg19-conv8-weight", 1179648, "FLOAT", 4718592),
    ("vgg19-conv9-weight", 2359296, "FLOAT", 9437184),
    ("vgg19-conv10-weight", 2359296, "FLOAT", 9437184),
    ("vgg19-conv11-weight", 2359296, "FLOAT", 9437184),
    ("vgg19-conv12-weight", 2359296, "FLOAT", 9437184),
    ("vgg19-conv13-weight", 2359296, "FLOAT", 9437184),
    ("vgg19-conv14-weight", 2359296, "FLOAT", 9437184),
    ("vgg19-conv15-weight", 2359296, "FLOAT", 9437184),
    ("vgg19-dense0-weight", 102760448, "FLOAT", 411041792),
    ("vgg19-dense1-weight", 16777216, "FLOAT", 67108864),
    ("vgg19-dense2-weight", 4096000, "FLOAT", 16384000),
]

# (layer name, extracted bytes, simulator reference bytes)
RESNET50_TABLE = [
    ("resnet-conv0", 37632, 37632),
    ("resnet-stage1-conv0", 16384, 16384),
    ("resnet-stage1-conv1", 147456, 147456),
    ("resnet-stage1-conv2", 65536, 65536),
    ("resnet-stage1-conv3", 65536, 65536),
    ("resnet-stage1-conv4", 65536, 65536),
    ("resnet-stage1-conv5", 147456, 147456),
    ("resnet-stage1-conv6", 65536, 65536),
    ("resnet-stage1-conv7", 65536, 65536),
    ("resnet-stage1-conv8", 147456, 147456),
    ("resnet-stage1-conv9", 65536, 65536),
    ("resnet-stage2-conv0", 131072, 131072),
    ("resnet-stage2-conv1", 589824, 589824),
    ("resnet-stage2-conv2", 262144, 262144),
    ("resnet-stage2-conv3", 524288, 524288),
    ("resnet-stage2-conv4", 262144, 262144),
    ("resnet-stage2-conv5", 589824, 589824),
    ("resnet-stage2-conv6", 262144, 262144),
    ("resnet-stage2-conv7", 262144, 262144),
    ("resnet-stage2-conv8", 589824, 589824),
    ("resnet-stage2-conv9", 262144, 262144),
    ("resnet-stage2-conv10", 262144, 262144),
    ("resnet-stage2-conv11", 589824, 589824),
    ("resnet-stage2-conv12", 262144, 262144),
    ("resnet-stage3-conv0", 524288, 2097152),
    ("resnet-stage3-conv1", 2359296, 524288),
    ("resnet-stage3-conv2", 1048576, 2359296),
    ("resnet-stage3-conv3", 2097152, 1048576),
    ("resnet-stage3-conv4", 1048576, 1048576),
    ("resnet-stage3-conv5", 2359296, 2359296),
    ("resnet-stage3-conv6", 1048576, 1048576),
    ("resnet-stage3-conv7", 1048576, 1048576),
    ("resnet-stage3-conv8", 2359296, 2359296),
    ("resnet-stage3-conv9", 1048576, 1048576),
    ("resnet-stage3-conv10", 1048576, 1048576),
    ("resnet-stage3-conv11", 2359296, 2359296),
    ("resnet-stage3-conv12", 1048576, 1048576),
    ("resnet-stage3-conv13", 1048576, 1048576),
    ("resnet-stage3-conv14", 2359296, 2359296),
    ("resnet-stage3-conv15", 1048576, 1048576),
    ("resnet-stage3-conv16", 1048576, 1048576),
    ("resnet-stage3-conv17", 2359296, 2359296),
    ("resnet-stage3-conv18", 1048576, 1048576),
    ("resnet-stage4-conv0", 2097152, 8388608),
    ("resnet-stage4-conv1", 9437184, 2097152),
    ("resnet-stage4-conv2", 4194304, 9437184),
    ("resnet-stage4-conv3", 8388608, 4194304),
    ("resnet-stage4-conv4", 4194304, 4194304),
    ("resnet-stage4-conv5", 9437184, 9437184),
    ("resnet-stage4-conv6", 4194304, 4194304),
    ("resnet-stage4-conv7", 4194304, 4194304),
    ("resnet-stage4-conv8", 9437184, 9437184),
    ("resnet-stage4-conv9", 4194304, 4194304),
    ("resnet-dense0", 8192000, 8192000),
]

RESNET50_EXTRACTED = [row[1] for row in RESNET50_TABLE]
RESNET50_REFERENCE = [row[2] for row in RESNET50_TABLE]
