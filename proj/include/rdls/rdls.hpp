#ifndef RDLS_RDLS_HPP_
#define RDLS_RDLS_HPP_

#include "rdls/codec.hpp"
#include "rdls/compress.hpp"
#include "rdls/core.hpp"
#include "rdls/denoise.hpp"
#include "rdls/descriptor.hpp"
#include "rdls/estimate.hpp"
#include "rdls/imageio.hpp"
#include "rdls/lifting.hpp"
#include "rdls/select.hpp"
#include "rdls/series.hpp"
#include "rdls/synth.hpp"
#include "rdls/transforms.hpp"

#endif  // RDLS_RDLS_HPP_
