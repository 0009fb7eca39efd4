#include "chaoslab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "chaoslab/errors.hpp"

namespace chaoslab::fft {

namespace {

struct Buffer {
  explicit Buffer(std::size_t n)
      : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!ptr) throw std::bad_alloc();
  }
  ~Buffer() { fftw_free(ptr); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  fftw_complex* ptr;
};

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// The FFTW planner is not reentrant; execution of an existing plan on fresh
// aligned arrays is.
std::mutex planner_mutex;
std::map<std::pair<std::vector<int>, int>, Plan> plans;

fftw_plan plan_for(const std::vector<int>& dims, int sign, std::size_t total) {
  std::lock_guard lock(planner_mutex);
  auto key = std::make_pair(dims, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second.get();
  Buffer scratch(total);
  fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), scratch.ptr,
                              scratch.ptr, sign, FFTW_ESTIMATE);
  if (!p) throw NumericalFailure("fft: FFTW could not create a plan");
  return plans.emplace(std::move(key), Plan(p)).first->second.get();
}

void transform(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign) {
  std::size_t total = 1;
  for (int d : dims) {
    if (d <= 0) throw PreconditionError("fft: non-positive dimension");
    total *= static_cast<std::size_t>(d);
  }
  if (data.size() != total) throw PreconditionError("fft: data size does not match shape");
  fftw_plan p = plan_for(dims, sign, total);
  Buffer buf(total);
  auto* raw = reinterpret_cast<std::complex<double>*>(buf.ptr);
  std::copy(data.begin(), data.end(), raw);
  fftw_execute_dft(p, buf.ptr, buf.ptr);
  std::copy(raw, raw + total, data.begin());
}

}  // namespace

void forward(std::vector<std::complex<double>>& data, const std::vector<int>& dims) {
  transform(data, dims, FFTW_FORWARD);
}

void inverse(std::vector<std::complex<double>>& data, const std::vector<int>& dims) {
  transform(data, dims, FFTW_BACKWARD);
}

const char* backend_version() { return fftw_version; }

}  // namespace chaoslab::fft
