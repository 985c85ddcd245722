/*
Copyright 2026 The Auralize Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef AURAL_BASE_LOGGING_H_
#define AURAL_BASE_LOGGING_H_

#include <cstdio>
#include <cstdlib>

// CHECK aborts on contract violations that indicate programmer error. User
// input errors (bad files, bad CLI flags) are reported with exceptions
// instead; see the parsers and commands.
#define AURAL_CHECK(condition)                                          \
  do {                                                                  \
    if (!(condition)) {                                                 \
      std::fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,       \
                   __LINE__, #condition);                               \
      std::abort();                                                     \
    }                                                                   \
  } while (false)

#ifdef NDEBUG
#define AURAL_DCHECK(condition) \
  do {                          \
  } while (false)
#else
#define AURAL_DCHECK(condition) AURAL_CHECK(condition)
#endif

#endif  // AURAL_BASE_LOGGING_H_
