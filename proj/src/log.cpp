// Copyright 2026 The nqaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nqaoa/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace nqaoa::log {

namespace {
std::atomic<Level> g_level{Level::kWarning};
std::mutex g_mutex;

void emit(Level at, std::string_view tag, std::string_view message) {
  if (at < g_level.load(std::memory_order_relaxed)) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::clog << "[nqaoa] " << tag << ": " << message << '\n';
}
}  // namespace

void set_level(Level level) { g_level.store(level, std::memory_order_relaxed); }
Level level() { return g_level.load(std::memory_order_relaxed); }

void info(std::string_view message) { emit(Level::kInfo, "info", message); }
void warning(std::string_view message) { emit(Level::kWarning, "warning", message); }

}  // namespace nqaoa::log
