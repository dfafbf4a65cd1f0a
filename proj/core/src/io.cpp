#include "bimap/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bimap/unicode.hpp"

namespace bimap {

namespace {

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& file, const std::string& bytes) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << bytes;
    if (!out) throw std::runtime_error("write failed for " + file.string());
}

std::vector<std::string> lines_of(const std::string& bytes) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : bytes) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(std::move(cur));
    return lines;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Shortest representation that round-trips a double exactly.
std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    double back;
    std::sscanf(buf, "%lf", &back);
    if (back == v) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[64];
            std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
            std::sscanf(shorter, "%lf", &back);
            if (back == v) return shorter;
        }
    }
    return buf;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("bad number '" + s + "' in " + context);
    }
}

std::map<std::string, std::string> load_key_values(const std::filesystem::path& file) {
    std::map<std::string, std::string> kv;
    for (const std::string& raw : lines_of(read_file(file))) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("expected 'key = value' in " + file.string() + ": " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

}  // namespace

PipelineParams load_params(const std::filesystem::path& file) {
    PipelineParams p;
    auto kv = load_key_values(file);
    auto take_double = [&](const char* key, double& out) {
        auto it = kv.find(key);
        if (it != kv.end()) {
            out = parse_double(it->second, file.string());
            kv.erase(it);
        }
    };
    auto take_int = [&](const char* key, int& out) {
        double v = static_cast<double>(out);
        take_double(key, v);
        out = static_cast<int>(v);
    };
    take_double("max_point_dispersal", p.simr.max_point_dispersal);
    take_double("max_angle_deviation", p.simr.max_angle_deviation);
    take_int("max_pal", p.simr.max_pal);
    take_int("chain_size", p.simr.chain_size);
    take_double("initial_rect_width", p.simr.initial_rect_width);
    take_double("rect_growth", p.simr.rect_growth);
    take_double("lcsr_threshold", p.lcsr_threshold);
    take_double("min_gap_scale", p.second_pass.min_gap_scale);
    take_double("gap_proximity_factor", p.second_pass.proximity_factor);
    take_double("min_confidence", p.gsa.min_confidence);
    if (!kv.empty())
        throw std::runtime_error("unknown key '" + kv.begin()->first + "' in " + file.string());
    return p;
}

void save_params(const std::filesystem::path& file, const PipelineParams& p) {
    std::ostringstream out;
    out << "max_point_dispersal = " << fmt_double(p.simr.max_point_dispersal) << "\n"
        << "max_angle_deviation = " << fmt_double(p.simr.max_angle_deviation) << "\n"
        << "max_pal = " << p.simr.max_pal << "\n"
        << "chain_size = " << p.simr.chain_size << "\n"
        << "initial_rect_width = " << fmt_double(p.simr.initial_rect_width) << "\n"
        << "rect_growth = " << fmt_double(p.simr.rect_growth) << "\n"
        << "lcsr_threshold = " << fmt_double(p.lcsr_threshold) << "\n"
        << "min_gap_scale = " << fmt_double(p.second_pass.min_gap_scale) << "\n"
        << "gap_proximity_factor = " << fmt_double(p.second_pass.proximity_factor) << "\n"
        << "min_confidence = " << fmt_double(p.gsa.min_confidence) << "\n";
    write_file(file, out.str());
}

std::u32string load_text(const std::filesystem::path& file) {
    return decode_utf8(read_file(file));
}

void save_text(const std::filesystem::path& file, const std::string& bytes) {
    write_file(file, bytes);
}

StopList load_stoplist(const std::filesystem::path& file) {
    StopList sl;
    for (const std::string& raw : lines_of(read_file(file))) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        sl.insert(decode_utf8(line));
    }
    return sl;
}

TranslationLexicon load_lexicon(const std::filesystem::path& file) {
    TranslationLexicon lex;
    for (const std::string& raw : lines_of(read_file(file))) {
        if (raw.empty() || raw[0] == '#') continue;
        const std::size_t tab = raw.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("expected 'source<TAB>target' in " + file.string());
        lex.insert(decode_utf8(trim(raw.substr(0, tab))), decode_utf8(trim(raw.substr(tab + 1))));
    }
    return lex;
}

std::vector<double> load_boundaries(const std::filesystem::path& file) {
    std::vector<double> bounds;
    for (const std::string& raw : lines_of(read_file(file))) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        bounds.push_back(parse_double(line, file.string()));
    }
    for (std::size_t i = 1; i < bounds.size(); ++i) {
        if (bounds[i] <= bounds[i - 1])
            throw std::runtime_error("boundaries must be strictly increasing in " + file.string());
    }
    return bounds;
}

void save_boundaries(const std::filesystem::path& file, std::span<const double> bounds) {
    std::ostringstream out;
    for (double b : bounds) out << fmt_double(b) << "\n";
    write_file(file, out.str());
}

std::vector<Point> load_reference_points(const std::filesystem::path& file) {
    std::vector<Point> refs;
    for (const std::string& raw : lines_of(read_file(file))) {
        if (raw.empty() || raw[0] == '#') continue;
        const std::size_t tab = raw.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("expected 'x<TAB>y' in " + file.string());
        refs.push_back(Point{parse_double(trim(raw.substr(0, tab)), file.string()),
                             parse_double(trim(raw.substr(tab + 1)), file.string()), 0, 0});
    }
    return refs;
}

void save_reference_points(const std::filesystem::path& file, std::span<const Point> refs) {
    std::ostringstream out;
    for (const Point& p : refs) out << fmt_double(p.x) << "\t" << fmt_double(p.y) << "\n";
    write_file(file, out.str());
}

void save_map(const std::filesystem::path& file, const BitextMap& map) {
    std::ostringstream out;
    out << "#bimap v1 width=" << fmt_double(map.space().width)
        << " height=" << fmt_double(map.space().height) << "\n";
    for (const MapAnchor& a : map.anchors()) {
        out << fmt_double(a.x) << "\t" << fmt_double(a.y);
        if (a.mer_corner) out << "\tM";
        out << "\n";
    }
    write_file(file, out.str());
}

BitextMap load_map(const std::filesystem::path& file) {
    const auto lines = lines_of(read_file(file));
    if (lines.empty()) throw std::runtime_error("empty map file " + file.string());
    double width = 0, height = 0;
    if (std::sscanf(lines[0].c_str(), "#bimap v1 width=%lf height=%lf", &width, &height) != 2)
        throw std::runtime_error("bad map header in " + file.string());

    std::vector<MapAnchor> anchors;
    std::vector<Mer> mers;
    bool corner_open = false;
    MapAnchor open_corner;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::istringstream ss(lines[i]);
        MapAnchor a;
        std::string flag;
        if (!(ss >> a.x >> a.y)) throw std::runtime_error("bad anchor line in " + file.string());
        if (ss >> flag) a.mer_corner = (flag == "M");
        anchors.push_back(a);
        if (a.mer_corner) {
            if (corner_open) {
                Mer m;
                m.lower_left = Point{open_corner.x, open_corner.y, 0, 0};
                m.upper_right = Point{a.x, a.y, 0, 0};
                mers.push_back(std::move(m));
                corner_open = false;
            } else {
                open_corner = a;
                corner_open = true;
            }
        }
    }
    if (corner_open) throw std::runtime_error("unpaired MER corner in " + file.string());
    return BitextMap(std::move(anchors), std::move(mers), BitextSpace{width, height});
}

namespace {

std::string range_str(const IndexRange& r) {
    if (r.count == 0) return "-";
    return std::to_string(r.begin) + ".." + std::to_string(r.begin + r.count - 1);
}

IndexRange parse_range(const std::string& s, const std::string& context) {
    if (s == "-") return IndexRange{0, 0};
    const std::size_t dots = s.find("..");
    if (dots == std::string::npos) throw std::runtime_error("bad range '" + s + "' in " + context);
    const long a = std::stol(s.substr(0, dots));
    const long b = std::stol(s.substr(dots + 2));
    if (a < 0 || b < a) throw std::runtime_error("bad range '" + s + "' in " + context);
    return IndexRange{static_cast<std::size_t>(a), static_cast<std::size_t>(b - a + 1)};
}

}  // namespace

void save_alignment(const std::filesystem::path& file, const Alignment& alignment) {
    std::ostringstream out;
    for (const AlignedBlock& b : alignment.blocks)
        out << range_str(b.x) << "\t" << range_str(b.y) << "\n";
    write_file(file, out.str());
}

Alignment load_alignment(const std::filesystem::path& file) {
    Alignment a;
    for (const std::string& raw : lines_of(read_file(file))) {
        if (raw.empty() || raw[0] == '#') continue;
        const std::size_t tab = raw.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("expected two ranges in " + file.string());
        AlignedBlock b;
        b.x = parse_range(trim(raw.substr(0, tab)), file.string());
        b.y = parse_range(trim(raw.substr(tab + 1)), file.string());
        a.blocks.push_back(b);
        a.x_sentences = std::max(a.x_sentences, b.x.end());
        a.y_sentences = std::max(a.y_sentences, b.y.end());
    }
    return a;
}

void save_relation(const std::filesystem::path& file, std::span<const Cell> cells) {
    std::ostringstream out;
    for (const Cell& c : cells) out << c.first << "\t" << c.second << "\n";
    write_file(file, out.str());
}

DevManifest load_manifest(const std::filesystem::path& file) {
    auto kv = load_key_values(file);
    DevManifest m;
    const auto base = file.parent_path();
    auto take = [&](const char* key) -> std::filesystem::path {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::runtime_error("manifest " + file.string() + " is missing key " + key);
        std::filesystem::path p = it->second;
        kv.erase(it);
        return p.is_absolute() ? p : base / p;
    };
    m.x_text = take("x_text");
    m.y_text = take("y_text");
    m.x_bounds = take("x_bounds");
    m.y_bounds = take("y_bounds");
    m.refs = take("refs");
    if (!kv.empty())
        throw std::runtime_error("unknown key '" + kv.begin()->first + "' in " + file.string());
    return m;
}

void save_manifest(const std::filesystem::path& file, const DevManifest& m) {
    std::ostringstream out;
    out << "x_text = " << m.x_text.string() << "\n"
        << "y_text = " << m.y_text.string() << "\n"
        << "x_bounds = " << m.x_bounds.string() << "\n"
        << "y_bounds = " << m.y_bounds.string() << "\n"
        << "refs = " << m.refs.string() << "\n";
    write_file(file, out.str());
}

}  // namespace bimap
