#pragma once

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace moq {

/// The library logger: stderr, level warn until the CLI reads MOQ_LOG.
inline spdlog::logger& logger() {
    static std::shared_ptr<spdlog::logger> l = [] {
        auto made = spdlog::stderr_color_st("moq");
        made->set_pattern("[%l] %v");
        made->set_level(spdlog::level::warn);
        return made;
    }();
    return *l;
}

}  // namespace moq
