#include <charconv>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "app.hpp"

namespace chaoslab::cli {

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return {buf, end};
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

Csv::Csv(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void Csv::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::logic_error("Csv::row: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_double(values[i]);
  }
  text_ += '\n';
}

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void OutputDir::write_text(const std::string& name, const std::string& content) {
  const auto target = dir_ / name;
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
  if (std::find(written_.begin(), written_.end(), name) == written_.end()) written_.push_back(name);
}

void OutputDir::write_json(const std::string& name, const json& j) { write_text(name, j.dump(2) + "\n"); }

}  // namespace chaoslab::cli
