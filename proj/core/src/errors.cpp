#include "rulfis/errors.hpp"

#include <spdlog/spdlog.h>

namespace rulfis {

void warn(const std::string& message) { spdlog::warn("{}", message); }

}  // namespace rulfis
