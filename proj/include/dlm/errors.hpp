#pragma once

#include <stdexcept>
#include <string>

namespace dlm {

// Violated precondition on user-supplied input.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A configurable cost cap was exceeded.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation requested at a pole.
struct pole_error : std::runtime_error {
    explicit pole_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dlm
