public class Main {
    public static void main(String[] args) {
        int n = 10, count = 0;                       // v1 v2 s1
        for (int i = 0; i < n; i++) {                // loop1 v3 s2
            for (int j = 0; j < n; j++) {            // loop2 v4 s3
                for (int k = 0; k < n; k++) {        // loop3 v5 s4 (depth 3)
                    count++;                         // s5
                }
            }
        }
        System.out.println(count);                  // s6
    }
}
