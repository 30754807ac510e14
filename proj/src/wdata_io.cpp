#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "sslab/errors.hpp"
#include "sslab/wdata.hpp"

namespace sslab {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

SpherePoint parse_point(const std::string& text) {
    std::string t = trim(text);
    if (t == "inf" || t == "infinity") return SpherePoint::infinity();
    return SpherePoint::at(parse_complex(t));
}

}  // namespace

WeierstrassData parse_wdata(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("line " + std::to_string(n) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key != "label" && key != "phi" && key != "psi" && key != "dh" && key != "punctures" && key != "degenerate")
            throw ParseError("line " + std::to_string(n) + ": unknown key '" + key + "'");
        kv[key] = trim(line.substr(eq + 1));
    }
    for (const char* k : {"phi", "psi", "dh", "punctures"})
        if (!kv.count(k)) throw ParseError(std::string("missing key '") + k + "'");
    PuncturedSphere dom;
    std::istringstream ps(kv["punctures"]);
    std::string item;
    while (std::getline(ps, item, ';'))
        if (!trim(item).empty()) dom.punctures.push_back(parse_point(item));
    bool degenerate = false;
    if (kv.count("degenerate")) {
        const std::string& d = kv["degenerate"];
        if (d == "true" || d == "1")
            degenerate = true;
        else if (d != "false" && d != "0")
            throw ParseError("degenerate must be true or false");
    }
    return WeierstrassData(parse_mero(kv["phi"]), parse_mero(kv["psi"]), parse_mero(kv["dh"]), dom,
                           kv.count("label") ? kv["label"] : "custom", degenerate);
}

std::string format_wdata(const WeierstrassData& data) {
    std::ostringstream out;
    out << "label = " << data.label() << "\n";
    out << "phi = " << to_string(data.phi()) << "\n";
    out << "psi = " << to_string(data.psi()) << "\n";
    out << "dh = " << to_string(data.dh()) << "\n";
    out << "punctures = ";
    const auto& p = data.domain().punctures;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out << "; ";
        if (p[i].infinite)
            out << "inf";
        else {
            char buf[96];
            std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", p[i].z.real(), p[i].z.imag());
            out << buf;
        }
    }
    out << "\n";
    out << "degenerate = " << (data.degenerate_ok() ? "true" : "false") << "\n";
    return out.str();
}

WeierstrassData load_wdata(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IOError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_wdata(ss.str());
}

void save_wdata(const WeierstrassData& data, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IOError("cannot write " + path);
    f << format_wdata(data);
    if (!f) throw IOError("write failed: " + path);
}

}  // namespace sslab
