// Copyright 2026 The pplearn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPLEARN_SRC_KERNELS_INTERNAL_HPP_
#define PPLEARN_SRC_KERNELS_INTERNAL_HPP_

#include "pplearn/kernels.hpp"

namespace pplearn::kernels {

#if defined(PPLEARN_HAVE_AVX2)
// Defined in kernels_avx2.cpp, which is the only file compiled with -mavx2.
const KernelTable& avx2_table();
#endif

}  // namespace pplearn::kernels

#endif  // PPLEARN_SRC_KERNELS_INTERNAL_HPP_
