#include "mwr/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace mwr {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

ConvexBody read_polygon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polygon file: " + path);
    std::vector<Vec2> pts;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        double x, y;
        if (is >> x >> y) pts.push_back({x, y});
    }
    return ConvexBody::polygon(std::move(pts));
}

void write_polygon_file(const ConvexBody& body, const std::string& path) {
    if (body.kind() != BodyKind::Polygon) throw std::invalid_argument("write_polygon_file: not a polygon body");
    std::ofstream out(path);
    for (const Vec2& v : body.vertices()) out << fmt(v.x) << ' ' << fmt(v.y) << '\n';
}

ConvexBody parse_body_spec(const std::string& spec) {
    std::istringstream is(spec);
    std::string head;
    is >> head;
    if (head == "disc") {
        double cx, cy, r;
        if (!(is >> cx >> cy >> r)) throw std::invalid_argument("body spec: expected 'disc cx cy r'");
        return ConvexBody::disc({cx, cy}, r);
    }
    if (head == "square") {
        double a;
        if (!(is >> a)) throw std::invalid_argument("body spec: expected 'square halfwidth'");
        return ConvexBody::polygon({{-a, -a}, {a, -a}, {a, a}, {-a, a}});
    }
    if (head == "polygon") {
        std::vector<Vec2> pts;
        double x, y;
        while (is >> x >> y) pts.push_back({x, y});
        return ConvexBody::polygon(std::move(pts));
    }
    return read_polygon_file(spec);
}

std::string describe_body(const ConvexBody& body) {
    std::ostringstream os;
    switch (body.kind()) {
        case BodyKind::Polygon: {
            os << "polygon";
            for (const Vec2& v : body.vertices()) os << ' ' << fmt(v.x) << ' ' << fmt(v.y);
            break;
        }
        case BodyKind::Disc:
            os << "disc " << fmt(body.disc_center().x) << ' ' << fmt(body.disc_center().y) << ' '
               << fmt(body.disc_radius());
            break;
        case BodyKind::SupportOnly: {
            os << "support " << body.direction_count() << ' ' << fmt(body.exact_mean_width());
            if (body.has_offset_form()) {
                os << " core " << body.offset_core().size() << ' ' << fmt(body.offset_radius());
                for (const Vec2& v : body.offset_core()) os << ' ' << fmt(v.x) << ' ' << fmt(v.y);
            } else {
                os << " nocore";
            }
            os << " samples";
            for (double s : body.support_samples()) os << ' ' << fmt(s);
            break;
        }
    }
    return os.str();
}

namespace {

ConvexBody parse_body_description(const std::string& text) {
    std::istringstream is(text);
    std::string head;
    is >> head;
    if (head == "polygon" || head == "disc") return parse_body_spec(text);
    if (head != "support") throw std::runtime_error("unknown body description: " + head);
    int m;
    double w;
    std::string core_tag;
    is >> m >> w >> core_tag;
    std::vector<Vec2> core;
    double core_r = 0.0;
    if (core_tag == "core") {
        std::size_t n;
        is >> n >> core_r;
        core.resize(n);
        for (Vec2& v : core) is >> v.x >> v.y;
    }
    std::string samples_tag;
    is >> samples_tag;
    std::vector<double> samples(m);
    for (double& s : samples) is >> s;
    if (!is) throw std::runtime_error("truncated support body description");
    // rebuild through a combination so the offset form is retained
    if (!core.empty()) {
        if (core.size() >= 3 && core_r > 0.0) {
            std::vector<Vec2> doubled = core;
            for (Vec2& v : doubled) v = 2.0 * v;
            return minkowski_combine(ConvexBody::polygon(doubled), ConvexBody::disc({0, 0}, 2.0 * core_r), 0.5);
        }
        return core.size() >= 3 ? ConvexBody::polygon(core) : ConvexBody::disc(core[0], core_r);
    }
    return ConvexBody::from_support_samples(std::move(samples), DirectionGrid(m), w);
}

}  // namespace

void write_grid_csv(const GridFunction& gf, const std::string& base_path) {
    std::ofstream csv(base_path + ".csv");
    if (!csv) throw std::runtime_error("cannot write " + base_path + ".csv");
    csv << "x,y,value\n";
    for (int iy = 0; iy < gf.ny; ++iy) {
        for (int ix = 0; ix < gf.nx; ++ix) {
            const int id = gf.index(ix, iy);
            if (gf.mask[id] == NodeMask::Exterior) continue;
            const Vec2 p = gf.node(ix, iy);
            csv << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(gf.values[id]) << '\n';
        }
    }
    std::ofstream meta(base_path + ".meta");
    meta << "origin " << fmt(gf.origin.x) << ' ' << fmt(gf.origin.y) << '\n';
    meta << "h " << fmt(gf.h) << '\n';
    meta << "nx " << gf.nx << '\n';
    meta << "ny " << gf.ny << '\n';
    meta << "body " << describe_body(gf.body) << '\n';
}

GridFunction read_grid_csv(const std::string& base_path) {
    std::ifstream meta(base_path + ".meta");
    if (!meta) throw std::runtime_error("cannot open " + base_path + ".meta");
    Vec2 origin;
    double h = 0;
    int nx = 0, ny = 0;
    std::string body_text;
    std::string line;
    while (std::getline(meta, line)) {
        std::istringstream is(line);
        std::string key;
        is >> key;
        if (key == "origin") is >> origin.x >> origin.y;
        else if (key == "h") is >> h;
        else if (key == "nx") is >> nx;
        else if (key == "ny") is >> ny;
        else if (key == "body") {
            std::getline(is, body_text);
            if (!body_text.empty() && body_text.front() == ' ') body_text.erase(0, 1);
        }
    }
    if (h <= 0 || nx <= 0 || ny <= 0 || body_text.empty())
        throw std::runtime_error("incomplete meta file: " + base_path + ".meta");
    GridFunction gf = make_grid(parse_body_description(body_text), origin, h, nx, ny);
    std::ifstream csv(base_path + ".csv");
    if (!csv) throw std::runtime_error("cannot open " + base_path + ".csv");
    std::getline(csv, line);  // header
    while (std::getline(csv, line)) {
        std::istringstream is(line);
        double x, y, v;
        char c1, c2;
        if (!(is >> x >> c1 >> y >> c2 >> v)) continue;
        const int ix = static_cast<int>(std::llround((x - gf.origin.x) / gf.h));
        const int iy = static_cast<int>(std::llround((y - gf.origin.y) / gf.h));
        if (ix < 0 || iy < 0 || ix >= gf.nx || iy >= gf.ny)
            throw std::runtime_error("grid csv row outside the stored grid");
        gf.values[gf.index(ix, iy)] = v;
    }
    return gf;
}

void write_argmax_csv(const ConvolutionResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "x,y,x0,y0,x1,y1,value\n";
    const GridFunction& gf = result.field;
    for (int iy = 0; iy < gf.ny; ++iy) {
        for (int ix = 0; ix < gf.nx; ++ix) {
            const int id = gf.index(ix, iy);
            if (gf.mask[id] == NodeMask::Exterior) continue;
            const Vec2 p = gf.node(ix, iy);
            const Vec2 a = result.argmax_x0[id];
            const Vec2 b = result.argmax_x1[id];
            out << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(a.x) << ',' << fmt(a.y) << ',' << fmt(b.x) << ','
                << fmt(b.y) << ',' << fmt(gf.values[id]) << '\n';
        }
    }
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

}  // namespace mwr
