#include "tensorank/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace tensorank {

json tensor_to_json(const CTensor& t) {
    json j;
    j["shape"] = t.shape.dims;
    json e = json::array();
    for (const Complex& v : t.entries) e.push_back({v.real(), v.imag()});
    j["entries"] = std::move(e);
    return j;
}

json tensor_to_json(const QTensor& t) {
    json j;
    j["shape"] = t.shape.dims;
    json e = json::array();
    for (const auto& v : t.entries) {
        e.push_back({v.re.get_num().get_str(), v.re.get_den().get_str(),
                     v.im.get_num().get_str(), v.im.get_den().get_str()});
    }
    j["entries"] = std::move(e);
    return j;
}

namespace {
Shape shape_from_json(const json& j) {
    if (!j.contains("shape") || !j["shape"].is_array())
        throw std::invalid_argument("tensor json: missing shape array");
    std::vector<int> dims;
    for (const auto& v : j["shape"]) dims.push_back(v.get<int>());
    return Shape(dims);
}

Rational rational_from_json(const json& v) {
    if (v.is_string()) {
        Rational r(v.get<std::string>());
        r.canonicalize();
        return r;
    }
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw std::invalid_argument("tensor json: rational component must be integer or string");
}
} // namespace

CTensor tensor_from_json(const json& j) {
    Shape s = shape_from_json(j);
    if (!j.contains("entries") || !j["entries"].is_array())
        throw std::invalid_argument("tensor json: missing entries array");
    const auto& e = j["entries"];
    if (static_cast<int64_t>(e.size()) != s.num_entries())
        throw std::invalid_argument("tensor json: entry count does not match shape");
    CTensor t(s);
    for (size_t k = 0; k < e.size(); ++k) {
        const auto& v = e[k];
        if (!v.is_array() || (v.size() != 2 && v.size() != 4))
            throw std::invalid_argument("tensor json: entries must be [re,im] or rational quadruples");
        if (v.size() == 2) {
            t.entries[k] = Complex(v[0].get<double>(), v[1].get<double>());
        } else {
            Rational re = rational_from_json(v[0]) / rational_from_json(v[1]);
            Rational im = rational_from_json(v[2]) / rational_from_json(v[3]);
            t.entries[k] = Complex(re.get_d(), im.get_d());
        }
    }
    return t;
}

QTensor exact_tensor_from_json(const json& j, unsigned long den_bound) {
    Shape s = shape_from_json(j);
    const auto& e = j["entries"];
    if (static_cast<int64_t>(e.size()) != s.num_entries())
        throw std::invalid_argument("tensor json: entry count does not match shape");
    QTensor t(s);
    for (size_t k = 0; k < e.size(); ++k) {
        const auto& v = e[k];
        if (!v.is_array() || (v.size() != 2 && v.size() != 4))
            throw std::invalid_argument("tensor json: entries must be [re,im] or rational quadruples");
        if (v.size() == 4) {
            Rational rd = rational_from_json(v[1]), id = rational_from_json(v[3]);
            if (rd == 0 || id == 0) throw std::invalid_argument("tensor json: zero denominator");
            t.entries[k] = GaussianRational(rational_from_json(v[0]) / rd, rational_from_json(v[2]) / id);
        } else if (den_bound == 0) {
            throw std::invalid_argument("tensor json: exact mode requires rational quadruple entries");
        } else {
            // floating input is rationalized with an explicit denominator bound
            t.entries[k] = GaussianRational(rationalize(v[0].get<double>(), den_bound),
                                            rationalize(v[1].get<double>(), den_bound));
        }
    }
    return t;
}

json decomposition_to_json(const Decomposition<Complex>& d) {
    json j;
    j["shape"] = d.shape.dims;
    json terms = json::array();
    for (const auto& t : d.terms) {
        json jt;
        jt["weight"] = {t.weight.real(), t.weight.imag()};
        json fs = json::array();
        for (const auto& f : t.factors) {
            json jf = json::array();
            for (const Complex& v : f) jf.push_back({v.real(), v.imag()});
            fs.push_back(std::move(jf));
        }
        jt["factors"] = std::move(fs);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j;
}

json decomposition_to_json(const Decomposition<GaussianRational>& d) {
    return decomposition_to_json(to_numeric(d));
}

namespace {
json parse_stream(const std::string& path) {
    json j;
    try {
        if (path == "-" || path.empty()) {
            std::cin >> j;
        } else {
            std::ifstream f(path);
            if (!f) throw std::invalid_argument("cannot open tensor file: " + path);
            f >> j;
        }
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed tensor file: ") + e.what());
    }
    return j;
}
} // namespace

CTensor read_tensor_file(const std::string& path) { return tensor_from_json(parse_stream(path)); }

QTensor read_exact_tensor_file(const std::string& path, unsigned long den_bound) {
    return exact_tensor_from_json(parse_stream(path), den_bound);
}

void write_json(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

} // namespace tensorank
