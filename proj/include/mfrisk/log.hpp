#pragma once

#include <spdlog/spdlog.h>

namespace mfrisk
{
/*!
 * Library logger writing to stderr. Level from MFRISK_LOG (trace, debug,
 * info, warn, error, off); default warn.
 */
spdlog::logger& log();

}  // namespace mfrisk
