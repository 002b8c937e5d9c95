#pragma once

#include <memory>

#include "algocert/sdp.hpp"

namespace algocert {

std::unique_ptr<SdpBackend> make_ipm_backend();
std::unique_ptr<SdpBackend> make_projection_backend();

}  // namespace algocert
