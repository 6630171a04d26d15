#include "minext/json_io.hpp"

#include <fstream>

#include "minext/error.hpp"

namespace minext {

namespace {

Json complex_entry(const char* key, Json coords, Complex v) {
  return Json{{key, std::move(coords)}, {"re", v.real()}, {"im", v.imag()}};
}

Json frequency_json(const Frequency& m) {
  return Json(std::vector<int>(m.components().begin(), m.components().end()));
}

Complex read_complex(const Json& e) {
  double re = e.at("re").get<double>();
  double im = e.contains("im") ? e.at("im").get<double>() : 0.0;
  return {re, im};
}

int read_dim(const Json& j) {
  int d = j.at("d").get<int>();
  if (d < 1) throw Error(ErrorCode::kParse, "\"d\" must be a positive integer");
  return d;
}

template <typename F>
auto parse_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed ") + what + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, std::string("invalid ") + what + ": " + e.what());
  }
}

std::pair<FrequencySet, std::vector<Complex>> read_frequency_list(const Json& j, const char* key,
                                                                  int d) {
  std::vector<Frequency> freqs;
  std::vector<Complex> vals;
  for (const auto& e : j.at(key)) {
    auto m = e.at("m").get<std::vector<int>>();
    if (static_cast<int>(m.size()) != d) {
      throw Error(ErrorCode::kParse, "frequency length differs from \"d\"");
    }
    freqs.emplace_back(std::move(m));
    vals.push_back(read_complex(e));
  }
  return {FrequencySet(std::move(freqs)), std::move(vals)};
}

Json write_frequency_list(const FrequencySet& s, const std::vector<Complex>& v) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) arr.push_back(complex_entry("m", frequency_json(s[i]), v[i]));
  return arr;
}

}  // namespace

Json measure_to_json(const DiscreteMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) {
    std::vector<double> x(a.x.coords().begin(), a.x.coords().end());
    atoms.push_back(complex_entry("x", Json(x), a.weight));
  }
  return Json{{"d", mu.dim()}, {"atoms", std::move(atoms)}};
}

DiscreteMeasure measure_from_json(const Json& j) {
  return parse_guard("measure", [&] {
    int d = read_dim(j);
    std::vector<Atom> atoms;
    for (const auto& e : j.at("atoms")) {
      auto x = e.at("x").get<std::vector<double>>();
      if (static_cast<int>(x.size()) != d) {
        throw Error(ErrorCode::kParse, "atom location length differs from \"d\"");
      }
      atoms.push_back({TorusPoint(std::move(x)), read_complex(e)});
    }
    return DiscreteMeasure(d, std::move(atoms));
  });
}

Json spectral_to_json(const SpectralData& data) {
  return Json{{"d", data.dim()}, {"data", write_frequency_list(data.lambda(), data.values())}};
}

SpectralData spectral_from_json(const Json& j) {
  return parse_guard("spectral data", [&] {
    auto [lambda, vals] = read_frequency_list(j, "data", read_dim(j));
    return SpectralData(std::move(lambda), std::move(vals));
  });
}

Json trig_to_json(const TrigPolynomial& f) {
  return Json{{"d", f.dim()},
              {"coefficients", write_frequency_list(f.support(), f.coefficients())}};
}

TrigPolynomial trig_from_json(const Json& j) {
  return parse_guard("trigonometric polynomial", [&] {
    auto [support, vals] = read_frequency_list(j, "coefficients", read_dim(j));
    return TrigPolynomial(std::move(support), std::move(vals));
  });
}

Json points_to_json(const std::vector<TorusPoint>& points) {
  Json arr = Json::array();
  for (const auto& p : points) arr.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
  return arr;
}

std::vector<TorusPoint> points_from_json(const Json& j) {
  return parse_guard("point list", [&] {
    std::vector<TorusPoint> out;
    for (const auto& e : j) out.emplace_back(e.get<std::vector<double>>());
    return out;
  });
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kInvalidArgument, "write failed for " + path.string());
}

}  // namespace minext
