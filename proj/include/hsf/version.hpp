#pragma once

namespace hsf {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "hsf-report/1";

}  // namespace hsf
