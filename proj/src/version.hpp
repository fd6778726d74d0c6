#pragma once

namespace pspca {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchemaId = "pspca-report/1";
inline constexpr const char* kTruthSchemaId = "pspca-truth/1";

}  // namespace pspca
