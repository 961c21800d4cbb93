#include <pybind11/pybind11.h>
PYBIND11_MODULE(_serrin, m) { m.doc() = "placeholder"; }
