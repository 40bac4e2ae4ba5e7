#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace superforge::log {

enum class level { error = 0, info = 1, debug = 2 };

// Log level comes from SUPERFORGE_LOG (error|info|debug); default is error.
inline level threshold() {
  static level cached = [] {
    const char* env = std::getenv("SUPERFORGE_LOG");
    if (!env) return level::error;
    std::string v(env);
    if (v == "debug") return level::debug;
    if (v == "info") return level::info;
    return level::error;
  }();
  return cached;
}

inline void write(level lv, const std::string& msg) {
  if (static_cast<int>(lv) > static_cast<int>(threshold())) return;
  const char* tag = lv == level::error ? "error" : lv == level::info ? "info" : "debug";
  std::cerr << "[superforge:" << tag << "] " << msg << "\n";
}

inline void info(const std::string& msg) { write(level::info, msg); }
inline void debug(const std::string& msg) { write(level::debug, msg); }
inline void errorlog(const std::string& msg) { write(level::error, msg); }

}  // namespace superforge::log
