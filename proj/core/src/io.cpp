#include "cakecut/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cakecut {

namespace {

using nlohmann::json;

json parse(std::istream& in, const char* what) {
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DomainError(std::string(what) + ": " + e.what());
    }
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot read " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write " + path);
    return f;
}

}  // namespace

CakeInstance read_instance(std::istream& in, bool force_waste_tolerant) {
    const json j = parse(in, "instance file");
    if (!j.is_object() || !j.contains("agents") || !j["agents"].is_array() ||
        j["agents"].empty())
        throw DomainError("instance file: missing or empty \"agents\" array");
    if (j.value("version", 0) != 1) throw DomainError("instance file: unsupported version");

    const bool shared_slope = j.contains("slope");
    std::vector<SinglePeakedValuation> agents;
    for (const auto& a : j["agents"]) {
        if (!a.is_object() || !a.contains("peak"))
            throw DomainError("instance file: each agent needs a \"peak\"");
        const double peak = a["peak"].get<double>();
        const bool has_h = a.contains("peak_density");
        const bool has_k = a.contains("slope");
        if (shared_slope) {
            if (has_h || has_k)
                throw DomainError("instance file: shared slope forbids per-agent shape fields");
            agents.push_back(SinglePeakedValuation::from_peak_slope(peak, j["slope"].get<double>()));
        } else if (has_h == has_k) {
            throw DomainError("instance file: exactly one of peak_density/slope per agent");
        } else if (has_h) {
            agents.push_back(
                SinglePeakedValuation::from_peak_density(peak, a["peak_density"].get<double>()));
        } else {
            agents.push_back(SinglePeakedValuation::from_peak_slope(peak, a["slope"].get<double>()));
        }
    }
    bool waste_tolerant = force_waste_tolerant;
    if (j.contains("options")) waste_tolerant |= j["options"].value("waste_tolerant", false);
    return CakeInstance::create(std::move(agents), waste_tolerant);
}

void write_instance(const CakeInstance& instance, std::ostream& out) {
    json agents = json::array();
    for (const auto& a : instance.agents())
        agents.push_back({{"peak", a.peak()}, {"peak_density", a.peak_density()}});
    const json j{{"version", 1},
                 {"agents", agents},
                 {"options", {{"waste_tolerant", instance.waste_tolerant()}}}};
    out << j.dump(2) << '\n';
}

Allocation read_allocation(std::istream& in) {
    const json j = parse(in, "allocation file");
    if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
        throw DomainError("allocation file: missing \"pieces\" array");
    if (j.value("version", 0) != 1) throw DomainError("allocation file: unsupported version");

    std::vector<Piece> pieces;
    for (const auto& p : j["pieces"]) {
        Piece piece;
        for (const auto& iv : p) {
            if (!iv.is_array() || iv.size() != 2)
                throw DomainError("allocation file: intervals are [start, end] pairs");
            piece.push_back({iv[0].get<double>(), iv[1].get<double>()});
        }
        pieces.push_back(std::move(piece));
    }
    return Allocation::from_pieces(std::move(pieces));
}

void write_allocation(const Allocation& allocation, std::ostream& out) {
    json pieces = json::array();
    for (const auto& p : allocation.pieces()) {
        json piece = json::array();
        for (const auto& iv : p) piece.push_back({iv.start, iv.end});
        pieces.push_back(std::move(piece));
    }
    const json j{{"version", 1}, {"pieces", pieces}};
    out << j.dump(2) << '\n';
}

CakeInstance load_instance(const std::string& path, bool force_waste_tolerant) {
    auto f = open_in(path);
    return read_instance(f, force_waste_tolerant);
}

void save_instance(const CakeInstance& instance, const std::string& path) {
    auto f = open_out(path);
    write_instance(instance, f);
}

Allocation load_allocation(const std::string& path) {
    auto f = open_in(path);
    return read_allocation(f);
}

void save_allocation(const Allocation& allocation, const std::string& path) {
    auto f = open_out(path);
    write_allocation(allocation, f);
}

}  // namespace cakecut
