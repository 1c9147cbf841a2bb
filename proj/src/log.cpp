#include "mfrisk/log.hpp"

#include <cstdlib>
#include <memory>

#include <spdlog/sinks/stdout_sinks.h>

namespace mfrisk
{
spdlog::logger& log()
{
    static std::shared_ptr<spdlog::logger> const logger = [] {
        auto l = std::make_shared<spdlog::logger>(
            "mfrisk", std::make_shared<spdlog::sinks::stderr_sink_mt>());
        l->set_pattern("[%l] %v");
        auto level = spdlog::level::warn;
        if (char const* env = std::getenv("MFRISK_LOG"))
            level = spdlog::level::from_str(env);
        l->set_level(level);
        return l;
    }();
    return *logger;
}

}  // namespace mfrisk
