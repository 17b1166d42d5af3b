#pragma once

#include "alphajet/suite.hpp"

#include <doctest.h>

#include <string>

// Runs every property of one module for a few seeds in both modes.
inline void check_module_properties(const std::string& module)
{
    for (auto mode : {alphajet::Mode::Exact, alphajet::Mode::Float}) {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            for (const auto& p : alphajet::all_properties()) {
                if (p.module != module)
                    continue;
                alphajet::PropertyResult r = alphajet::run_property(p, {seed, mode, 0});
                INFO(p.name, " seed ", seed, mode == alphajet::Mode::Exact ? " exact" : " float");
                INFO(r.first_failure);
                CHECK(r.pass());
            }
        }
    }
}
