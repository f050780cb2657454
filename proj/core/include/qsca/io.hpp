#pragma once

#include "qsca/circuit.hpp"
#include "qsca/device.hpp"
#include "qsca/library.hpp"
#include "qsca/reconstruct.hpp"
#include "qsca/scheduler.hpp"
#include "qsca/tracegen.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

// Interchange formats. Every writer is deterministic: identical values give
// identical bytes. Readers throw Error(Format) on schema violations and
// Error(Io) when a file cannot be read or written.
namespace qsca::io {

std::string device_to_json(const Device& device);
Device device_from_json(std::string_view text);

std::string library_to_json(const BasisPulseLibrary& lib);
BasisPulseLibrary library_from_json(std::string_view text);

std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(std::string_view text);

std::string schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(std::string_view text);

/// {"drive/0": [...], "control/3": [...]}
std::string traces_to_json(const std::map<Channel, PowerTrace>& traces);
std::map<Channel, PowerTrace> traces_from_json(std::string_view text);

std::string recon_to_json(const ReconstructedCircuit& recon);
ReconstructedCircuit recon_from_json(std::string_view text);

/// "index,power" header then one row per sample. A malformed row throws
/// ParseError with its line number.
std::string trace_to_csv(const PowerTrace& trace);
PowerTrace trace_from_csv(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// "%.17g"
std::string format_double(double value);

} // namespace qsca::io
