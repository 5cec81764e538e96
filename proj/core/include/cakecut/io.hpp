#ifndef CAKECUT_IO_HPP
#define CAKECUT_IO_HPP

#include <iosfwd>
#include <string>

#include "cakecut/allocation.hpp"
#include "cakecut/valuation.hpp"

namespace cakecut {

/// Instance files are versioned JSON: agents given as {peak, peak_density} or
/// {peak, slope}, or bare {peak} under a top-level shared "slope". Options:
/// {"waste_tolerant": bool}. Floats are stored at full round-trip precision.
CakeInstance read_instance(std::istream& in, bool force_waste_tolerant = false);
CakeInstance load_instance(const std::string& path, bool force_waste_tolerant = false);
void write_instance(const CakeInstance& instance, std::ostream& out);
void save_instance(const CakeInstance& instance, const std::string& path);

/// Allocation files: {"version":1, "pieces": [[[s,e],...], ...]}.
Allocation read_allocation(std::istream& in);
Allocation load_allocation(const std::string& path);
void write_allocation(const Allocation& allocation, std::ostream& out);
void save_allocation(const Allocation& allocation, const std::string& path);

}  // namespace cakecut

#endif
